//! Coxeter systems via the exact reflection representation.
//!
//! Elements are stored as a pair of rank x rank matrices (the element and its
//! inverse) acting on simple-root coordinates. Length and descent tests reduce
//! to the sign of a root image, so they work uniformly for finite and affine
//! groups. When every bond order lies in {2,3,4,6,inf} the matrices have
//! integer entries (a generalized Cartan form); otherwise entries live in the
//! real cyclotomic field Q(2cos(pi/N)).

use crate::algnum::{AlgNum, NumberField};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

pub const INFINITY: u32 = 0;

// ---------------------------------------------------------------------------
// Coxeter matrix
// ---------------------------------------------------------------------------

/// Bond orders m[s][t]; 0 encodes infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<CoxeterMatrix> {
        let rank = entries.len();
        if rank == 0 {
            return Err(Error::InvalidMatrix {
                row: 0,
                col: 0,
                reason: "rank must be positive".into(),
            });
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix {
                    row: i,
                    col: row.len(),
                    reason: format!("row has length {} but rank is {}", row.len(), rank),
                });
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j && m != 1 {
                    return Err(Error::InvalidMatrix {
                        row: i,
                        col: j,
                        reason: format!("diagonal entry must be 1, found {m}"),
                    });
                }
                if i != j && m == 1 {
                    return Err(Error::InvalidMatrix {
                        row: i,
                        col: j,
                        reason: "off-diagonal entry must be >= 2 or 0 (infinity)".into(),
                    });
                }
                if m != entries[j][i] {
                    return Err(Error::InvalidMatrix {
                        row: i,
                        col: j,
                        reason: format!("not symmetric: {} vs {}", m, entries[j][i]),
                    });
                }
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bond order between s and t; 0 means infinity.
    pub fn m(&self, s: usize, t: usize) -> u32 {
        self.entries[s][t]
    }

    pub fn is_crystallographic(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|&m| matches!(m, INFINITY | 1 | 2 | 3 | 4 | 6))
    }
}

// ---------------------------------------------------------------------------
// generator subsets
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSubset(pub u32);

impl GenSubset {
    pub const EMPTY: GenSubset = GenSubset(0);

    pub fn full(rank: usize) -> GenSubset {
        GenSubset((1u32 << rank) - 1)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> GenSubset {
        let mut bits = 0u32;
        for i in iter {
            bits |= 1 << i;
        }
        GenSubset(bits)
    }

    pub fn contains(&self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    pub fn intersect(&self, other: GenSubset) -> GenSubset {
        GenSubset(self.0 & other.0)
    }

    pub fn is_subset_of(&self, other: GenSubset) -> bool {
        self.0 & !other.0 == 0
    }
}

impl std::fmt::Debug for GenSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for s in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl std::fmt::Display for GenSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

// ---------------------------------------------------------------------------
// scalar abstraction over the two representations
// ---------------------------------------------------------------------------

pub trait Scalar: Clone + Eq + Hash + Send + Sync + std::fmt::Debug + 'static {
    fn sign(&self) -> i32;
    fn is_zero(&self) -> bool {
        self.sign() == 0
    }
    /// self -= c * x
    fn sub_prod(&mut self, c: &Self, x: &Self);
    fn sub(&mut self, x: &Self);
    fn neg(&mut self);
}

impl Scalar for i64 {
    fn sign(&self) -> i32 {
        match self.cmp(&0) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }
    fn sub_prod(&mut self, c: &Self, x: &Self) {
        *self -= c * x;
    }
    fn sub(&mut self, x: &Self) {
        *self -= x;
    }
    fn neg(&mut self) {
        *self = -*self;
    }
}

impl Scalar for AlgNum {
    fn sign(&self) -> i32 {
        AlgNum::sign(self)
    }
    fn is_zero(&self) -> bool {
        AlgNum::is_zero(self)
    }
    fn sub_prod(&mut self, c: &Self, x: &Self) {
        if c.is_zero() || x.is_zero() {
            return;
        }
        let p = c * x;
        *self = &*self - &p;
    }
    fn sub(&mut self, x: &Self) {
        *self = &*self - x;
    }
    fn neg(&mut self) {
        *self = -&*self;
    }
}

// ---------------------------------------------------------------------------
// the system
// ---------------------------------------------------------------------------

struct SysInner<T: Scalar> {
    matrix: CoxeterMatrix,
    rank: usize,
    /// cartan[s][t]: sigma_s(alpha_t) = alpha_t - cartan[s][t] * alpha_s
    cartan: Vec<Vec<T>>,
    zero: T,
    one: T,
    descriptor: String,
}

pub struct CoxeterSystem<T: Scalar> {
    inner: Arc<SysInner<T>>,
}

impl<T: Scalar> Clone for CoxeterSystem<T> {
    fn clone(&self) -> Self {
        CoxeterSystem {
            inner: self.inner.clone(),
        }
    }
}

impl<T: Scalar> std::fmt::Debug for CoxeterSystem<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CoxeterSystem(rank {}, scalars {})",
            self.inner.rank, self.inner.descriptor
        )
    }
}

impl CoxeterSystem<i64> {
    /// Integer reflection representation; requires all bonds in {2,3,4,6,inf}.
    pub fn new_int(matrix: CoxeterMatrix) -> Result<CoxeterSystem<i64>> {
        if !matrix.is_crystallographic() {
            return Err(Error::Internal(
                "integer representation requires bond orders in {2,3,4,6,inf}".into(),
            ));
        }
        let rank = matrix.rank();
        let mut cartan = vec![vec![0i64; rank]; rank];
        for s in 0..rank {
            cartan[s][s] = 2;
        }
        for s in 0..rank {
            for t in s + 1..rank {
                let (a, b) = match matrix.m(s, t) {
                    2 => (0, 0),
                    3 => (-1, -1),
                    4 => (-1, -2),
                    6 => (-1, -3),
                    INFINITY => (-2, -2),
                    m => unreachable!("non-crystallographic bond {m}"),
                };
                cartan[s][t] = a;
                cartan[t][s] = b;
            }
        }
        Ok(CoxeterSystem {
            inner: Arc::new(SysInner {
                matrix,
                rank,
                cartan,
                zero: 0,
                one: 1,
                descriptor: "Z".into(),
            }),
        })
    }
}

impl CoxeterSystem<AlgNum> {
    /// Representation over Q(2cos(pi/N)), N the lcm of the finite bond orders.
    pub fn new_alg(matrix: CoxeterMatrix) -> Result<CoxeterSystem<AlgNum>> {
        let rank = matrix.rank();
        let field = field_for_bonds(&matrix, GenSubset::full(rank));
        let two = field.from_i64(2);
        let mut cartan = vec![vec![field.zero(); rank]; rank];
        for s in 0..rank {
            cartan[s][s] = two.clone();
        }
        for s in 0..rank {
            for t in s + 1..rank {
                let c = match matrix.m(s, t) {
                    INFINITY => -&two,
                    m => -&field.two_cos_multiple(field.n / u64::from(m)),
                };
                cartan[s][t] = c.clone();
                cartan[t][s] = c;
            }
        }
        let descriptor = field.descriptor().to_string();
        Ok(CoxeterSystem {
            inner: Arc::new(SysInner {
                matrix,
                rank,
                cartan,
                zero: field.zero(),
                one: field.from_i64(1),
                descriptor,
            }),
        })
    }
}

/// Field containing 2cos(pi/m) for every finite bond order among I.
fn field_for_bonds(matrix: &CoxeterMatrix, subset: GenSubset) -> Arc<NumberField> {
    let mut n: u64 = 2;
    for s in subset.iter() {
        for t in subset.iter() {
            if s < t {
                let m = matrix.m(s, t);
                if m != INFINITY {
                    n = lcm(n, u64::from(m));
                }
            }
        }
    }
    NumberField::two_cos_pi_over(n)
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl<T: Scalar> CoxeterSystem<T> {
    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.inner.matrix
    }

    pub fn scalar_descriptor(&self) -> &str {
        &self.inner.descriptor
    }

    pub fn full_set(&self) -> GenSubset {
        GenSubset::full(self.inner.rank)
    }

    fn check_index(&self, s: usize) -> Result<()> {
        if s >= self.inner.rank {
            Err(Error::IndexOutOfRange {
                index: s,
                rank: self.inner.rank,
            })
        } else {
            Ok(())
        }
    }

    pub fn identity(&self) -> GroupElement<T> {
        let rank = self.inner.rank;
        let mut mat = vec![self.inner.zero.clone(); rank * rank];
        for i in 0..rank {
            mat[i + rank * i] = self.inner.one.clone();
        }
        GroupElement {
            sys: self.inner.clone(),
            fwd: mat.clone(),
            inv: mat,
            len: 0,
            word: OnceLock::from(Vec::new()),
        }
    }

    pub fn generator(&self, s: usize) -> Result<GroupElement<T>> {
        self.check_index(s)?;
        Ok(self.identity().right_mul_gen(s))
    }

    pub fn from_word(&self, word: &[usize]) -> Result<GroupElement<T>> {
        let mut w = self.identity();
        for &s in word {
            self.check_index(s)?;
            w = w.right_mul_gen(s);
        }
        Ok(w)
    }

    /// True iff W_I is finite: the bilinear form restricted to I is positive
    /// definite. Minors are evaluated exactly in a cyclotomic field.
    pub fn is_spherical(&self, i_set: GenSubset) -> bool {
        let idx: Vec<usize> = i_set.iter().filter(|&s| s < self.inner.rank).collect();
        let k = idx.len();
        if k == 0 {
            return true;
        }
        let field = field_for_bonds(&self.inner.matrix, i_set);
        let two = field.from_i64(2);
        let mut a = vec![vec![field.zero(); k]; k];
        for p in 0..k {
            a[p][p] = two.clone();
            for q in p + 1..k {
                let m = self.inner.matrix.m(idx[p], idx[q]);
                let c = match m {
                    INFINITY => -&two,
                    _ => -&field.two_cos_multiple(field.n / u64::from(m)),
                };
                a[p][q] = c.clone();
                a[q][p] = c;
            }
        }
        // Gaussian elimination without pivoting: positive definite iff every
        // pivot is strictly positive.
        for p in 0..k {
            if !a[p][p].is_positive() {
                return false;
            }
            let pivot_inv = a[p][p].inv();
            let prow = a[p].clone();
            for r in p + 1..k {
                let factor = &a[r][p] * &pivot_inv;
                if factor.is_zero() {
                    continue;
                }
                for c in p..k {
                    let delta = &factor * &prow[c];
                    let v = &a[r][c] - &delta;
                    a[r][c] = v;
                }
            }
        }
        true
    }

    /// All of W_I, breadth-first by length, each level in shortlex order.
    pub fn enumerate_parabolic(&self, i_set: GenSubset) -> Result<Vec<GroupElement<T>>> {
        self.enumerate_parabolic_capped(i_set, 10_000_000)
    }

    pub fn enumerate_parabolic_capped(
        &self,
        i_set: GenSubset,
        cap: usize,
    ) -> Result<Vec<GroupElement<T>>> {
        if !self.is_spherical(i_set) {
            return Err(Error::NonSpherical(i_set.to_string()));
        }
        let gens: Vec<usize> = i_set.iter().filter(|&s| s < self.inner.rank).collect();
        let mut out = vec![self.identity()];
        let mut seen: HashMap<Vec<T>, ()> = HashMap::new();
        seen.insert(out[0].fwd.clone(), ());
        let mut level = out.clone();
        while !level.is_empty() {
            let mut next = Vec::new();
            for w in &level {
                for &s in &gens {
                    if !w.has_right_descent(s) {
                        let ws = w.right_mul_gen(s);
                        if seen.insert(ws.fwd.clone(), ()).is_none() {
                            next.push(ws);
                        }
                    }
                }
            }
            if seen.len() > cap {
                return Err(Error::SizeCap(format!(
                    "parabolic enumeration for {i_set} exceeded {cap} elements"
                )));
            }
            next.sort_by(|a, b| a.canonical_word().cmp(b.canonical_word()));
            out.extend(next.iter().cloned());
            level = next;
        }
        Ok(out)
    }

    pub fn longest_element(&self, i_set: GenSubset) -> Result<GroupElement<T>> {
        if !self.is_spherical(i_set) {
            return Err(Error::NonSpherical(i_set.to_string()));
        }
        let gens: Vec<usize> = i_set.iter().filter(|&s| s < self.inner.rank).collect();
        let mut w = self.identity();
        'outer: loop {
            for &s in &gens {
                if !w.has_right_descent(s) {
                    w = w.right_mul_gen(s);
                    continue 'outer;
                }
            }
            return Ok(w);
        }
    }

    /// Checks involution and braid relations for every generator pair.
    pub fn verify_relations(&self) -> Result<()> {
        let rank = self.inner.rank;
        let e = self.identity();
        for s in 0..rank {
            let ss = self.from_word(&[s, s])?;
            if ss != e {
                return Err(Error::Internal(format!("generator {s} is not an involution")));
            }
            for t in s + 1..rank {
                let m = self.inner.matrix.m(s, t);
                if m == INFINITY {
                    continue;
                }
                let mut w1 = Vec::new();
                let mut w2 = Vec::new();
                for k in 0..m as usize {
                    w1.push(if k % 2 == 0 { s } else { t });
                    w2.push(if k % 2 == 0 { t } else { s });
                }
                let a = self.from_word(&w1)?;
                let b = self.from_word(&w2)?;
                if a != b || a.length() != m as usize {
                    return Err(Error::Internal(format!(
                        "braid relation fails for pair ({s},{t})"
                    )));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// elements
// ---------------------------------------------------------------------------

/// Group element as forward and inverse matrices in simple-root coordinates,
/// stored column-major: entry (i,j) at i + rank*j, column j = image of
/// alpha_j.
pub struct GroupElement<T: Scalar> {
    sys: Arc<SysInner<T>>,
    fwd: Vec<T>,
    inv: Vec<T>,
    len: usize,
    word: OnceLock<Vec<u8>>,
}

impl<T: Scalar> Clone for GroupElement<T> {
    fn clone(&self) -> Self {
        GroupElement {
            sys: self.sys.clone(),
            fwd: self.fwd.clone(),
            inv: self.inv.clone(),
            len: self.len,
            word: self.word.clone(),
        }
    }
}

impl<T: Scalar> PartialEq for GroupElement<T> {
    fn eq(&self, other: &Self) -> bool {
        self.fwd == other.fwd
    }
}
impl<T: Scalar> Eq for GroupElement<T> {}

impl<T: Scalar> Hash for GroupElement<T> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.fwd.hash(state);
    }
}

impl<T: Scalar> std::fmt::Debug for GroupElement<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.len == 0 {
            return write!(f, "e");
        }
        for &s in self.canonical_word() {
            write!(f, "{}", s)?;
            if self.sys.rank > 10 {
                write!(f, ".")?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> GroupElement<T> {
    pub fn system(&self) -> CoxeterSystem<T> {
        CoxeterSystem {
            inner: self.sys.clone(),
        }
    }

    pub fn length(&self) -> usize {
        self.len
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    /// Sign of column s of a matrix: the root image is all-positive or
    /// all-negative, so the first nonzero coordinate decides.
    fn column_sign(mat: &[T], rank: usize, s: usize) -> i32 {
        for i in 0..rank {
            let sg = mat[i + rank * s].sign();
            if sg != 0 {
                return sg;
            }
        }
        unreachable!("zero column in an invertible matrix")
    }

    /// ell(ws) < ell(w), i.e. w(alpha_s) is a negative root.
    pub fn has_right_descent(&self, s: usize) -> bool {
        Self::column_sign(&self.fwd, self.sys.rank, s) < 0
    }

    /// ell(sw) < ell(w), i.e. w^{-1}(alpha_s) is a negative root.
    pub fn has_left_descent(&self, s: usize) -> bool {
        Self::column_sign(&self.inv, self.sys.rank, s) < 0
    }

    pub fn right_descents(&self) -> GenSubset {
        GenSubset::from_indices((0..self.sys.rank).filter(|&s| self.has_right_descent(s)))
    }

    pub fn left_descents(&self) -> GenSubset {
        GenSubset::from_indices((0..self.sys.rank).filter(|&s| self.has_left_descent(s)))
    }

    /// Smallest left descent, if any.
    pub fn first_left_descent(&self) -> Option<usize> {
        (0..self.sys.rank).find(|&s| self.has_left_descent(s))
    }

    /// w * sigma_s: column update on fwd, row update on inv.
    pub fn right_mul_gen(&self, s: usize) -> GroupElement<T> {
        let rank = self.sys.rank;
        let descent = self.has_right_descent(s);
        let mut fwd = self.fwd.clone();
        let col_s: Vec<T> = (0..rank).map(|i| fwd[i + rank * s].clone()).collect();
        for t in 0..rank {
            let c = &self.sys.cartan[s][t];
            if c.is_zero() {
                continue;
            }
            for i in 0..rank {
                fwd[i + rank * t].sub_prod(c, &col_s[i]);
            }
        }
        let inv = left_mul_gen_mat(&self.sys, &self.inv, s);
        GroupElement {
            sys: self.sys.clone(),
            fwd,
            inv,
            len: if descent { self.len - 1 } else { self.len + 1 },
            word: OnceLock::new(),
        }
    }

    /// sigma_s * w.
    pub fn left_mul_gen(&self, s: usize) -> GroupElement<T> {
        let rank = self.sys.rank;
        let descent = self.has_left_descent(s);
        let fwd = left_mul_gen_mat(&self.sys, &self.fwd, s);
        let mut inv = self.inv.clone();
        let col_s: Vec<T> = (0..rank).map(|i| inv[i + rank * s].clone()).collect();
        for t in 0..rank {
            let c = &self.sys.cartan[s][t];
            if c.is_zero() {
                continue;
            }
            for i in 0..rank {
                inv[i + rank * t].sub_prod(c, &col_s[i]);
            }
        }
        GroupElement {
            sys: self.sys.clone(),
            fwd,
            inv,
            len: if descent { self.len - 1 } else { self.len + 1 },
            word: OnceLock::new(),
        }
    }

    pub fn inverse(&self) -> GroupElement<T> {
        GroupElement {
            sys: self.sys.clone(),
            fwd: self.inv.clone(),
            inv: self.fwd.clone(),
            len: self.len,
            word: OnceLock::new(),
        }
    }

    /// self * other, by folding other's canonical word on the right.
    pub fn mul(&self, other: &GroupElement<T>) -> GroupElement<T> {
        let mut w = self.clone();
        for &s in other.canonical_word() {
            w = w.right_mul_gen(s as usize);
        }
        w
    }

    /// Shortlex-minimal reduced word, extracted by repeatedly removing the
    /// smallest left descent.
    pub fn canonical_word(&self) -> &[u8] {
        self.word.get_or_init(|| {
            let mut word = Vec::with_capacity(self.len);
            let mut w = self.clone();
            while let Some(s) = w.first_left_descent() {
                word.push(s as u8);
                w = w.left_mul_gen(s);
            }
            debug_assert!(w.len == 0);
            word
        })
    }

    pub fn word_usize(&self) -> Vec<usize> {
        self.canonical_word().iter().map(|&s| s as usize).collect()
    }

    /// Length then shortlex order; total on each group.
    pub fn cmp_shortlex(&self, other: &GroupElement<T>) -> std::cmp::Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.canonical_word().cmp(other.canonical_word()))
    }

    pub fn is_involution(&self) -> bool {
        self.fwd == self.inv
    }
}

fn left_mul_gen_mat<T: Scalar>(sys: &SysInner<T>, mat: &[T], s: usize) -> Vec<T> {
    let rank = sys.rank;
    let mut out = mat.to_vec();
    for j in 0..rank {
        // new (s,j) entry: old minus sum_i cartan[s][i] * mat[i][j]
        let mut acc = sys.zero.clone();
        for i in 0..rank {
            let c = &sys.cartan[s][i];
            if c.is_zero() {
                continue;
            }
            // acc -= (-c)*m  computed as acc.sub_prod(c, m) gives acc - c*m;
            // we want acc + c*m, so negate at the end instead.
            acc.sub_prod(c, &mat[i + rank * j]);
        }
        // acc now holds -sum c*m; new entry = old + acc
        let mut v = out[s + rank * j].clone();
        let mut neg_acc = acc;
        neg_acc.neg();
        v.sub(&neg_acc);
        out[s + rank * j] = v;
    }
    out
}

/// Convenience for tests and the CLI: pick the integer representation when
/// the matrix allows it.
pub enum AnySystem {
    Int(CoxeterSystem<i64>),
    Alg(CoxeterSystem<AlgNum>),
}

pub fn build_system(matrix: CoxeterMatrix) -> Result<AnySystem> {
    if matrix.is_crystallographic() {
        Ok(AnySystem::Int(CoxeterSystem::new_int(matrix)?))
    } else {
        Ok(AnySystem::Alg(CoxeterSystem::new_alg(matrix)?))
    }
}

/// Ready-made systems used by the test suites and the CLI check command.
pub mod presets {
    use super::*;

    pub fn a1() -> CoxeterSystem<i64> {
        CoxeterSystem::new_int(CoxeterMatrix::new(vec![vec![1]]).unwrap()).unwrap()
    }

    pub fn a2() -> CoxeterSystem<i64> {
        CoxeterSystem::new_int(CoxeterMatrix::new(vec![vec![1, 3], vec![3, 1]]).unwrap()).unwrap()
    }

    pub fn a3() -> CoxeterSystem<i64> {
        CoxeterSystem::new_int(
            CoxeterMatrix::new(vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]]).unwrap(),
        )
        .unwrap()
    }

    pub fn b3() -> CoxeterSystem<i64> {
        CoxeterSystem::new_int(
            CoxeterMatrix::new(vec![vec![1, 4, 2], vec![4, 1, 3], vec![2, 3, 1]]).unwrap(),
        )
        .unwrap()
    }

    /// Bourbaki numbering: 1-2 bond 3, 2-3 bond 4, 3-4 bond 3. Generators are
    /// 0-based here, so paper generator i is index i-1.
    pub fn f4() -> CoxeterSystem<i64> {
        CoxeterSystem::new_int(
            CoxeterMatrix::new(vec![
                vec![1, 3, 2, 2],
                vec![3, 1, 4, 2],
                vec![2, 4, 1, 3],
                vec![2, 2, 3, 1],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    /// Affine A2: triangle with all bonds 3.
    pub fn a2_affine() -> CoxeterSystem<i64> {
        CoxeterSystem::new_int(
            CoxeterMatrix::new(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]).unwrap(),
        )
        .unwrap()
    }

    /// Affine C2: chain with both bonds 4.
    pub fn c2_affine() -> CoxeterSystem<i64> {
        CoxeterSystem::new_int(
            CoxeterMatrix::new(vec![vec![1, 4, 2], vec![4, 1, 4], vec![2, 4, 1]]).unwrap(),
        )
        .unwrap()
    }

    pub fn h3() -> CoxeterSystem<AlgNum> {
        CoxeterSystem::new_alg(
            CoxeterMatrix::new(vec![vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]]).unwrap(),
        )
        .unwrap()
    }

    /// Bourbaki numbering: chain 1-3-4-5-6-7-8 with node 2 attached to 4.
    /// Generator i here is paper generator i+1.
    pub fn e8() -> CoxeterSystem<i64> {
        let rank = 8;
        let mut m = vec![vec![2u32; rank]; rank];
        for i in 0..rank {
            m[i][i] = 1;
        }
        let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
        for (a, b) in edges {
            m[a][b] = 3;
            m[b][a] = 3;
        }
        CoxeterSystem::new_int(CoxeterMatrix::new(m).unwrap()).unwrap()
    }

    /// Affine A_n for n >= 2: an (n+1)-cycle with all bonds 3.
    pub fn a_affine(n: usize) -> CoxeterSystem<i64> {
        assert!(n >= 2);
        let rank = n + 1;
        let mut m = vec![vec![2u32; rank]; rank];
        for i in 0..rank {
            m[i][i] = 1;
            let j = (i + 1) % rank;
            m[i][j] = 3;
            m[j][i] = 3;
        }
        CoxeterSystem::new_int(CoxeterMatrix::new(m).unwrap()).unwrap()
    }

    /// Affine C_n for n >= 2: a chain 0-1-...-n with end bonds 4, middle 3.
    pub fn c_affine(n: usize) -> CoxeterSystem<i64> {
        assert!(n >= 2);
        let rank = n + 1;
        let mut m = vec![vec![2u32; rank]; rank];
        for i in 0..rank {
            m[i][i] = 1;
        }
        for i in 0..n {
            let bond = if i == 0 || i == n - 1 { 4 } else { 3 };
            m[i][i + 1] = bond;
            m[i + 1][i] = bond;
        }
        CoxeterSystem::new_int(CoxeterMatrix::new(m).unwrap()).unwrap()
    }
}
