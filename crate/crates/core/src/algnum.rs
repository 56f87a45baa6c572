//! Exact arithmetic in the real cyclotomic fields Q(2cos(pi/n)).
//!
//! These fields carry the entries of the reflection representation for
//! non-crystallographic bond orders, and the Gram matrix minors used by the
//! sphericity test. Elements are polynomials in theta = 2cos(pi/n) reduced
//! modulo the minimal polynomial of theta; signs are decided exactly by
//! shrinking a rational isolating interval around theta.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::sync::{Arc, Mutex};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// dense univariate polynomials over Q, little-endian coefficients
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<Rat>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    poly_trim(&mut out);
    out
}

fn poly_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of a by b (b nonzero).
fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    let mut quo = vec![Rat::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db || (rem.len() == b.len() && !rem.is_empty() && db == 0) {
        if rem.len() < b.len() {
            break;
        }
        let dr = rem.len() - 1;
        let c = &rem[dr] / lead;
        let shift = dr - db;
        quo[shift] = c.clone();
        for (j, bc) in b.iter().enumerate() {
            let v = &rem[shift + j] - &(bc * &c);
            rem[shift + j] = v;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    poly_trim(&mut quo);
    (quo, rem)
}

fn poly_eval(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_deriv(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rat(i as i64))
        .collect()
}

/// Extended gcd: returns (g, u) with u*a = g mod b, g the monic gcd of a and b.
fn poly_half_xgcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut u0 = vec![Rat::one()];
    let mut u1: Vec<Rat> = Vec::new();
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let nu = poly_add(&u0, &poly_scale(&poly_mul(&q, &u1), &-Rat::one()));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, nu);
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = Rat::one() / lead;
        r0 = poly_scale(&r0, &inv);
        u0 = poly_scale(&u0, &inv);
    }
    (r0, u0)
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials over Z (as Rat vectors)
// ---------------------------------------------------------------------------

/// Phi_n for all divisors of n, returned as the entry for n itself.
fn cyclotomic(n: u64) -> Vec<Rat> {
    fn compute(n: u64, memo: &mut std::collections::HashMap<u64, Vec<Rat>>) -> Vec<Rat> {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        // x^n - 1
        let mut num = vec![Rat::zero(); n as usize + 1];
        num[0] = -Rat::one();
        num[n as usize] = Rat::one();
        let mut acc = num;
        for d in 1..n {
            if n % d == 0 {
                let phi_d = compute(d, memo);
                let (q, r) = poly_divrem(&acc, &phi_d);
                debug_assert!(r.is_empty());
                acc = q;
            }
        }
        memo.insert(n, acc.clone());
        acc
    }
    let mut memo = std::collections::HashMap::new();
    compute(n, &mut memo)
}

/// Minimal polynomial of 2cos(2*pi/n) for n >= 3, via the palindromic
/// substitution Phi_n(x) = x^(d) * psi(x + 1/x).
fn real_cyclotomic_min_poly(n: u64) -> Vec<Rat> {
    let phi = cyclotomic(n);
    let deg = phi.len() - 1;
    debug_assert!(deg % 2 == 0);
    let d = deg / 2;
    // p_j(y) = x^j + x^-j expressed in y = x + 1/x
    let mut p_prev: Vec<Rat> = vec![rat(2)]; // p_0
    let mut p_cur: Vec<Rat> = vec![Rat::zero(), Rat::one()]; // p_1 = y
    let mut psi = poly_scale(&p_prev, &(&phi[d] / rat(2)));
    // psi starts at a_d * 1 (p_0/2 compensates the doubled constant)
    psi = poly_scale(&psi, &rat(1));
    let mut acc = vec![Rat::zero()];
    acc = poly_add(&acc, &poly_scale(&[phi[d].clone()], &Rat::one()));
    for j in 1..=d {
        let pj = if j == 1 {
            p_cur.clone()
        } else {
            // p_j = y*p_{j-1} - p_{j-2}
            let mut shifted = vec![Rat::zero()];
            shifted.extend_from_slice(&p_cur);
            let next = poly_add(&shifted, &poly_scale(&p_prev, &-Rat::one()));
            p_prev = std::mem::replace(&mut p_cur, next);
            p_cur.clone()
        };
        acc = poly_add(&acc, &poly_scale(&pj, &phi[d + j]));
    }
    let _ = psi;
    acc
}

fn sign_of(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// the number field
// ---------------------------------------------------------------------------

/// Q(theta) with theta = 2cos(pi/n), theta the largest root of `modulus`.
pub struct NumberField {
    pub n: u64,
    modulus: Vec<Rat>,
    degree: usize,
    sturm: Vec<Vec<Rat>>,
    interval: Mutex<(Rat, Rat)>,
    descriptor: String,
}

impl std::fmt::Debug for NumberField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NumberField({})", self.descriptor)
    }
}

impl NumberField {
    /// Field generated by theta = 2cos(pi/n).
    pub fn two_cos_pi_over(n: u64) -> Arc<NumberField> {
        assert!(n >= 1);
        let modulus: Vec<Rat> = match n {
            1 => vec![rat(2), Rat::one()],  // x + 2, theta = -2
            2 => vec![Rat::zero(), Rat::one()], // x, theta = 0
            _ => real_cyclotomic_min_poly(2 * n),
        };
        let degree = modulus.len() - 1;
        let descriptor = if degree == 1 {
            "Q".to_string()
        } else {
            format!("Q(2cos(pi/{n})) of degree {degree}")
        };
        let sturm = sturm_chain(&modulus);
        let field = NumberField {
            n,
            modulus,
            degree,
            sturm,
            interval: Mutex::new((rat(-3), rat(3))),
            descriptor,
        };
        field.isolate_largest_root();
        Arc::new(field)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    fn count_roots(&self, a: &Rat, b: &Rat) -> usize {
        sturm_variations(&self.sturm, a) - sturm_variations(&self.sturm, b)
    }

    /// Shrink the stored interval to isolate the largest real root.
    fn isolate_largest_root(&self) {
        let mut lo = rat(-3);
        let mut hi = rat(3);
        if self.degree == 1 {
            let root = -&self.modulus[0] / &self.modulus[1];
            *self.interval.lock().unwrap() = (&root - rat(1), &root + rat(1));
            return;
        }
        while self.count_roots(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / rat(2);
            if self.count_roots(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        *self.interval.lock().unwrap() = (lo, hi);
    }

    pub fn zero(self: &Arc<Self>) -> AlgNum {
        AlgNum {
            field: self.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn from_rat(self: &Arc<Self>, r: Rat) -> AlgNum {
        let mut coeffs = vec![r];
        poly_trim(&mut coeffs);
        AlgNum {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_i64(self: &Arc<Self>, v: i64) -> AlgNum {
        self.from_rat(rat(v))
    }

    pub fn theta(self: &Arc<Self>) -> AlgNum {
        if self.degree == 1 {
            let root = -&self.modulus[0] / &self.modulus[1];
            return self.from_rat(root);
        }
        AlgNum {
            field: self.clone(),
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    /// 2cos(k*pi/n) as a field element, via the Chebyshev-style recurrence.
    pub fn two_cos_multiple(self: &Arc<Self>, k: u64) -> AlgNum {
        let mut prev = self.from_i64(2);
        if k == 0 {
            return prev;
        }
        let mut cur = self.theta();
        for _ in 1..k {
            let next = &(&cur * &self.theta()) - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    fn reduce(&self, mut p: Vec<Rat>) -> Vec<Rat> {
        if p.len() > self.degree {
            let (_, r) = poly_divrem(&p, &self.modulus);
            p = r;
        }
        poly_trim(&mut p);
        p
    }

    /// Exact sign of p(theta). Refines the isolating interval as needed.
    fn sign(&self, p: &[Rat]) -> i32 {
        if p.is_empty() {
            return 0;
        }
        if p.len() == 1 {
            return sign_of(&p[0]);
        }
        let mut guard = self.interval.lock().unwrap();
        loop {
            let (lo, hi) = (&guard.0, &guard.1);
            let (vlo, vhi) = interval_eval(p, lo, hi);
            if vlo.is_positive() {
                return 1;
            }
            if vhi.is_negative() {
                return -1;
            }
            // bisect the isolating interval
            let mid = (lo + hi) / rat(2);
            let s_mid = sign_of(&poly_eval(&self.modulus, &mid));
            let s_lo = sign_of(&poly_eval(&self.modulus, lo));
            debug_assert!(s_lo != 0);
            if s_mid == 0 {
                // theta would be rational; impossible for degree >= 2
                unreachable!("rational root of irreducible modulus");
            }
            if s_mid == s_lo {
                guard.0 = mid;
            } else {
                guard.1 = mid;
            }
        }
    }
}

/// Interval evaluation of p over [lo,hi] by Horner with interval arithmetic.
fn interval_eval(p: &[Rat], lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut alo = Rat::zero();
    let mut ahi = Rat::zero();
    for c in p.iter().rev() {
        let c1 = &alo * lo;
        let c2 = &alo * hi;
        let c3 = &ahi * lo;
        let c4 = &ahi * hi;
        let mut mn = c1.clone();
        let mut mx = c1;
        for v in [c2, c3, c4] {
            if v < mn {
                mn = v.clone();
            }
            if v > mx {
                mx = v;
            }
        }
        alo = mn + c;
        ahi = mx + c;
    }
    (alo, ahi)
}

fn sturm_chain(p: &[Rat]) -> Vec<Vec<Rat>> {
    let mut chain = vec![p.to_vec(), poly_deriv(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, mut r) = poly_divrem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        chain.push(r);
    }
    chain
}

fn sturm_variations(chain: &[Vec<Rat>], x: &Rat) -> usize {
    let mut vars = 0;
    let mut last = 0;
    for p in chain {
        let s = sign_of(&poly_eval(p, x));
        if s != 0 {
            if last != 0 && s != last {
                vars += 1;
            }
            last = s;
        }
    }
    vars
}

// ---------------------------------------------------------------------------
// field elements
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct AlgNum {
    field: Arc<NumberField>,
    coeffs: Vec<Rat>,
}

impl AlgNum {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sign(&self) -> i32 {
        self.field.sign(&self.coeffs)
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn inv(&self) -> AlgNum {
        assert!(!self.is_zero(), "inverse of zero");
        if self.coeffs.len() == 1 {
            return AlgNum {
                field: self.field.clone(),
                coeffs: vec![Rat::one() / &self.coeffs[0]],
            };
        }
        let (g, u) = poly_half_xgcd(&self.coeffs, &self.field.modulus);
        debug_assert_eq!(g.len(), 1, "modulus not coprime with element");
        let coeffs = self.field.reduce(poly_scale(&u, &(Rat::one() / &g[0])));
        AlgNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl Eq for AlgNum {}

impl std::hash::Hash for AlgNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl std::fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgNum{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl std::ops::Add for &AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: &AlgNum) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            coeffs: poly_add(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl std::ops::Sub for &AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: &AlgNum) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            coeffs: poly_add(&self.coeffs, &poly_scale(&rhs.coeffs, &-Rat::one())),
        }
    }
}

impl std::ops::Mul for &AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: &AlgNum) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            coeffs: self.field.reduce(poly_mul(&self.coeffs, &rhs.coeffs)),
        }
    }
}

impl std::ops::Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            coeffs: poly_scale(&self.coeffs, &-Rat::one()),
        }
    }
}
