//! Isotropic random walks on cotype-I simplices via the Hecke transfer:
//! the transition operator theta(T) is iterated in the T-basis with numeric
//! coefficients, exactly in rationals up to a step limit and in f64 beyond.

use crate::algnum::{rat, Rat};
use crate::cosets::{double_coset_elements, enumerate_r, poincare, DoubleCosetRep};
use crate::coxeter::{CoxeterSystem, GenSubset, GroupElement, Scalar};
use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::pregallery::parabolic_row;
use crate::qpoly::{ParamAssignment, ParamValue, QRatio};
use crate::spheres::sphere_size;
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;

/// Steps computed in exact rational arithmetic before switching to f64.
pub const EXACT_STEP_LIMIT: usize = 50;

/// Default cap for the structure-constant oracle.
pub const ORACLE_CAP: usize = 5;

/// Parameter assignment with every generator set to a numeric constant.
pub fn const_params(qvals: &[Rat]) -> ParamAssignment {
    ParamAssignment::new(qvals.iter().map(|q| ParamValue::Const(q.clone())).collect())
}

#[derive(Clone)]
pub struct WalkSpec<T: Scalar> {
    sys: CoxeterSystem<T>,
    i_set: GenSubset,
    steps: Vec<(DoubleCosetRep<T>, Rat)>,
    qvals: Vec<Rat>,
    params: ParamAssignment,
}

impl<T: Scalar> WalkSpec<T> {
    pub fn system(&self) -> &CoxeterSystem<T> {
        &self.sys
    }

    pub fn cotype(&self) -> GenSubset {
        self.i_set
    }

    pub fn steps(&self) -> &[(DoubleCosetRep<T>, Rat)] {
        &self.steps
    }

    pub fn qvals(&self) -> &[Rat] {
        &self.qvals
    }

    /// The constant parameter assignment at the walk's numeric values.
    pub fn params(&self) -> &ParamAssignment {
        &self.params
    }

    /// Max step length over the supporting double cosets.
    pub fn max_step(&self) -> usize {
        self.steps
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .flat_map(|(rep, _)| double_coset_elements(rep).unwrap())
            .map(|z| z.length())
            .max()
            .unwrap_or(0)
    }
}

/// Validates cotype, probabilities, and the exact normalisation
/// sum of p_w * |sphere of radius w| = 1.
pub fn build_walk<T: Scalar>(
    sys: &CoxeterSystem<T>,
    i_set: GenSubset,
    probs: Vec<(DoubleCosetRep<T>, Rat)>,
    qvals: Vec<Rat>,
) -> Result<WalkSpec<T>> {
    if !sys.is_spherical(i_set) {
        return Err(Error::NonSpherical(i_set.to_string()));
    }
    if qvals.len() != sys.rank() {
        return Err(Error::Internal(format!(
            "expected {} parameter values, got {}",
            sys.rank(),
            qvals.len()
        )));
    }
    for (s, q) in qvals.iter().enumerate() {
        if !q.is_positive() {
            return Err(Error::Singular(format!(
                "parameter q_{s} = {q} is not positive"
            )));
        }
    }
    let params = const_params(&qvals);
    let mut total = Rat::zero();
    for (rep, p) in &probs {
        if rep.i_set != i_set || rep.j_set != i_set {
            return Err(Error::Internal(
                "step representative has the wrong cotypes".into(),
            ));
        }
        if p.is_negative() {
            return Err(Error::Internal(format!(
                "negative step probability {p} at {:?}",
                rep.element
            )));
        }
        let size = sphere_size(rep, &params)?.eval(&HashMap::new())?;
        total += p * size;
    }
    if !total.is_one() {
        let defect = Rat::one() - &total;
        return Err(Error::BadNormalization {
            total: total.to_string(),
            defect: defect.to_string(),
        });
    }
    Ok(WalkSpec {
        sys: sys.clone(),
        i_set,
        steps: probs,
        qvals,
        params,
    })
}

/// theta(T) = sum over steps of (p_w / N(I)) sum of T_z over W_I w W_I.
pub fn theta_operator<T: Scalar>(walk: &WalkSpec<T>) -> Result<HeckeElement<T>> {
    let n_i = poincare(&walk.sys, walk.i_set, &walk.params)?;
    let mut terms = HashMap::new();
    for (rep, p) in &walk.steps {
        if p.is_zero() {
            continue;
        }
        let coeff = QRatio::new(walk.params.one().scale(p), n_i.clone())?;
        for z in double_coset_elements(rep)? {
            terms.insert(z, coeff.clone());
        }
    }
    Ok(HeckeElement::from_terms(&walk.sys, &walk.params, terms))
}

// ---------------------------------------------------------------------------
// numeric engine
// ---------------------------------------------------------------------------

pub trait WalkNum: Clone {
    fn from_rat(r: &Rat) -> Self;
    fn zero_val() -> Self;
    fn is_zero_val(&self) -> bool;
    fn accum(&mut self, o: &Self);
    fn times(&self, o: &Self) -> Self;
}

impl WalkNum for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn zero_val() -> Self {
        Rat::zero()
    }
    fn is_zero_val(&self) -> bool {
        Zero::is_zero(self)
    }
    fn accum(&mut self, o: &Self) {
        *self += o;
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

impl WalkNum for f64 {
    fn from_rat(r: &Rat) -> Self {
        r.to_f64().unwrap()
    }
    fn zero_val() -> Self {
        0.0
    }
    fn is_zero_val(&self) -> bool {
        *self == 0.0
    }
    fn accum(&mut self, o: &Self) {
        *self += o;
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

/// Element interner with lazy right-multiplication successor tables; folding
/// a step word is then pure table lookups.
struct Engine<T: Scalar> {
    rank: usize,
    elems: Vec<GroupElement<T>>,
    lens: Vec<usize>,
    qz: Vec<Rat>,
    ids: HashMap<GroupElement<T>, u32>,
    succ: Vec<Vec<Option<(u32, bool)>>>,
    qvals: Vec<Rat>,
}

impl<T: Scalar> Engine<T> {
    fn new(sys: &CoxeterSystem<T>, qvals: &[Rat]) -> Self {
        let mut eng = Engine {
            rank: sys.rank(),
            elems: Vec::new(),
            lens: Vec::new(),
            qz: Vec::new(),
            ids: HashMap::new(),
            succ: Vec::new(),
            qvals: qvals.to_vec(),
        };
        eng.intern(sys.identity(), Rat::one());
        eng
    }

    fn intern(&mut self, g: GroupElement<T>, qz: Rat) -> u32 {
        if let Some(&id) = self.ids.get(&g) {
            return id;
        }
        let id = self.elems.len() as u32;
        self.lens.push(g.length());
        self.qz.push(qz);
        self.ids.insert(g.clone(), id);
        self.elems.push(g);
        self.succ.push(vec![None; self.rank]);
        id
    }

    fn successor(&mut self, id: u32, s: usize) -> (u32, bool) {
        if let Some(entry) = self.succ[id as usize][s] {
            return entry;
        }
        let g = &self.elems[id as usize];
        let gs = g.right_mul_gen(s);
        let ascent = gs.length() > g.length();
        let qz = if ascent {
            &self.qz[id as usize] * &self.qvals[s]
        } else {
            &self.qz[id as usize] / &self.qvals[s]
        };
        let sid = self.intern(gs, qz);
        self.succ[id as usize][s] = Some((sid, ascent));
        (sid, ascent)
    }
}

/// One application of theta(T) from the right, by folding each step word.
fn apply_step<T: Scalar, N: WalkNum>(
    eng: &mut Engine<T>,
    state: &[N],
    step_terms: &[(Vec<usize>, N)],
    q: &[N],
    qm1: &[N],
) -> Vec<N> {
    let mut out: Vec<N> = vec![N::zero_val(); eng.elems.len()];
    for (i, mass) in state.iter().enumerate() {
        if mass.is_zero_val() {
            continue;
        }
        for (word, c) in step_terms {
            let mut cur: Vec<(u32, N)> = vec![(i as u32, mass.times(c))];
            for &s in word {
                let mut next = Vec::with_capacity(cur.len() * 2);
                for (j, a) in cur {
                    let (k, ascent) = eng.successor(j, s);
                    if ascent {
                        next.push((k, a));
                    } else {
                        next.push((k, a.times(&q[s])));
                        next.push((j, a.times(&qm1[s])));
                    }
                }
                cur = next;
            }
            if out.len() < eng.elems.len() {
                out.resize(eng.elems.len(), N::zero_val());
            }
            for (j, a) in cur {
                out[j as usize].accum(&a);
            }
        }
    }
    out
}

fn step_terms_num<T: Scalar, N: WalkNum>(walk: &WalkSpec<T>, n_i: &Rat) -> Result<Vec<(Vec<usize>, N)>> {
    let mut out = Vec::new();
    for (rep, p) in &walk.steps {
        if p.is_zero() {
            continue;
        }
        let coeff = p / n_i;
        for z in double_coset_elements(rep)? {
            out.push((z.word_usize(), N::from_rat(&coeff)));
        }
    }
    Ok(out)
}

fn numeric_qs<N: WalkNum>(qvals: &[Rat]) -> (Vec<N>, Vec<N>) {
    let q: Vec<N> = qvals.iter().map(N::from_rat).collect();
    let qm1: Vec<N> = qvals.iter().map(|v| N::from_rat(&(v - Rat::one()))).collect();
    (q, qm1)
}

/// A numeric probability: exact below the step limit, floating beyond it.
#[derive(Clone, Debug, PartialEq)]
pub enum WalkValue {
    Exact(Rat),
    Approx(f64),
}

impl WalkValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            WalkValue::Exact(r) => r.to_f64().unwrap(),
            WalkValue::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            WalkValue::Exact(r) => Some(r),
            WalkValue::Approx(_) => None,
        }
    }
}

/// The T-basis coefficients of theta(T)^n.
pub struct WalkState<T: Scalar> {
    pub n: usize,
    pub dist: Vec<(GroupElement<T>, WalkValue)>,
}

impl<T: Scalar> WalkState<T> {
    pub fn coeff(&self, w: &GroupElement<T>) -> WalkValue {
        self.dist
            .iter()
            .find(|(g, _)| g == w)
            .map(|(_, v)| v.clone())
            .unwrap_or(WalkValue::Exact(Rat::zero()))
    }

    pub fn max_length(&self) -> usize {
        self.dist.iter().map(|(g, _)| g.length()).max().unwrap_or(0)
    }

    /// Total mass sum of coeff(z) * q_z; 1 exactly while in rational mode.
    pub fn mass(&self, walk: &WalkSpec<T>) -> WalkValue {
        let mut exact = Rat::zero();
        let mut approx = 0.0f64;
        let mut any_approx = false;
        for (g, v) in &self.dist {
            let mut qz = Rat::one();
            for &s in g.canonical_word() {
                qz *= &walk.qvals[s as usize];
            }
            match v {
                WalkValue::Exact(r) => exact += r * qz,
                WalkValue::Approx(x) => {
                    any_approx = true;
                    approx += x * qz.to_f64().unwrap();
                }
            }
        }
        if any_approx {
            WalkValue::Approx(approx + exact.to_f64().unwrap())
        } else {
            WalkValue::Exact(exact)
        }
    }
}

/// Runs the engine for n steps, recording the return probability
/// p^{(k)}(A,A) = N(I) * coeff of T_e at every k. Exact rationals through
/// `exact_limit`, f64 beyond.
fn run_engine<T: Scalar>(
    walk: &WalkSpec<T>,
    n: usize,
    exact_limit: usize,
) -> Result<(Engine<T>, Vec<WalkValue>, Vec<Rat>, Vec<f64>, usize)> {
    let n_i = poincare(&walk.sys, walk.i_set, &walk.params)?.eval(&HashMap::new())?;
    let mut eng = Engine::new(&walk.sys, &walk.qvals);
    let mut series = Vec::with_capacity(n + 1);

    let mut exact_state: Vec<Rat> = vec![Rat::one()];
    // p^(0)(A,A) = 1: the 0-step operator is the corner-algebra unit 1_I
    series.push(WalkValue::Exact(Rat::one()));
    let steps_exact: Vec<(Vec<usize>, Rat)> = step_terms_num(walk, &n_i)?;
    let (q_ex, qm1_ex) = numeric_qs::<Rat>(&walk.qvals);

    let cut = n.min(exact_limit);
    for _ in 0..cut {
        exact_state = apply_step(&mut eng, &exact_state, &steps_exact, &q_ex, &qm1_ex);
        series.push(WalkValue::Exact(&n_i * &exact_state[0]));
    }
    let mut approx_state: Vec<f64> = Vec::new();
    if n > cut {
        approx_state = exact_state.iter().map(|r| r.to_f64().unwrap()).collect();
        let steps_f: Vec<(Vec<usize>, f64)> = step_terms_num(walk, &n_i)?;
        let (q_f, qm1_f) = numeric_qs::<f64>(&walk.qvals);
        let n_i_f = n_i.to_f64().unwrap();
        for _ in cut..n {
            approx_state = apply_step(&mut eng, &approx_state, &steps_f, &q_f, &qm1_f);
            series.push(WalkValue::Approx(n_i_f * approx_state[0]));
        }
    }
    Ok((eng, series, exact_state, approx_state, cut))
}

/// theta(T)^n as a T-basis distribution.
pub fn n_step<T: Scalar>(walk: &WalkSpec<T>, n: usize) -> Result<WalkState<T>> {
    let (eng, _, exact_state, approx_state, cut) = run_engine(walk, n, EXACT_STEP_LIMIT)?;
    let mut dist = Vec::new();
    if n <= cut {
        for (i, v) in exact_state.iter().enumerate() {
            if !Zero::is_zero(v) {
                dist.push((eng.elems[i].clone(), WalkValue::Exact(v.clone())));
            }
        }
    } else {
        for (i, v) in approx_state.iter().enumerate() {
            if *v != 0.0 {
                dist.push((eng.elems[i].clone(), WalkValue::Approx(*v)));
            }
        }
    }
    dist.sort_by(|(a, _), (b, _)| a.cmp_shortlex(b));
    Ok(WalkState { n, dist })
}

/// p^{(n)}(A,A) = N(I) * coefficient of T_e in theta(T)^n.
pub fn return_probability<T: Scalar>(walk: &WalkSpec<T>, n: usize) -> Result<WalkValue> {
    let series = return_probability_series(walk, n)?;
    Ok(series[n].clone())
}

/// p^{(k)}(A,A) for k = 0..=n in one engine run.
pub fn return_probability_series<T: Scalar>(
    walk: &WalkSpec<T>,
    n: usize,
) -> Result<Vec<WalkValue>> {
    let (_, series, _, _, _) = run_engine(walk, n, EXACT_STEP_LIMIT)?;
    Ok(series)
}

/// p^{(n)}(A,A) computed independently by iterating the X_I-level structure
/// constants c_{u,v}^w(I,I,I) from the pregallery module; no Hecke transfer.
pub fn walk_oracle_small<T: Scalar>(walk: &WalkSpec<T>, n: usize, cap: usize) -> Result<Rat> {
    if n > cap {
        return Err(Error::SizeCap(format!(
            "oracle step count {n} exceeds cap {cap}"
        )));
    }
    let sys = &walk.sys;
    let i = walk.i_set;
    let identity_rep = DoubleCosetRep::new(sys.identity(), i, i)?;
    if n == 0 {
        return Ok(Rat::one());
    }
    let max_len = walk.max_step() * n;
    let reps = enumerate_r(sys, i, i, max_len);
    // f_k(u): the T_u^{II}-coefficient of the n-fold operator product
    let mut f: HashMap<GroupElement<T>, Rat> = HashMap::new();
    f.insert(identity_rep.element.clone(), Rat::one());
    for _ in 0..n {
        let mut next: HashMap<GroupElement<T>, Rat> = HashMap::new();
        for w in &reps {
            let mut acc = Rat::zero();
            for (v, p) in &walk.steps {
                if p.is_zero() {
                    continue;
                }
                let v_inv = DoubleCosetRep::new(v.element.inverse(), i, i)?;
                let row = parabolic_row(i, i, &v_inv, w, &walk.params)?;
                for (u, c) in &row {
                    if let Some(fu) = f.get(u) {
                        acc += fu * p * c.eval(&HashMap::new())?;
                    }
                }
            }
            if !Zero::is_zero(&acc) {
                next.insert(w.element.clone(), acc);
            }
        }
        f = next;
    }
    Ok(f.remove(&identity_rep.element).unwrap_or_else(Rat::zero))
}

// ---------------------------------------------------------------------------
// the affine A2 simple walk and its local limit theorem
// ---------------------------------------------------------------------------

/// The simple isotropic walk on the cotype-{0} simplices of affine A2:
/// equal probability on the two length-1 double cosets.
pub fn simple_walk_a2(q: i64) -> Result<WalkSpec<i64>> {
    let sys = crate::coxeter::presets::a2_affine();
    let i = GenSubset::from_indices([0]);
    let qr = rat(q);
    // each sphere has q(q+1) elements
    let p = Rat::one() / (rat(2) * &qr * (&qr + Rat::one()));
    let mut probs = Vec::new();
    for s in [1usize, 2] {
        let rep = DoubleCosetRep::new(sys.generator(s)?, i, i)?;
        probs.push((rep, p.clone()));
    }
    build_walk(&sys, i, probs, vec![qr.clone(), qr.clone(), qr])
}

/// Spectral factor rho = (q^2 + 4q - 1) / (2q(q+1)).
pub fn a2_rho(q: &Rat) -> Rat {
    let num = q * q + rat(4) * q - Rat::one();
    let den = rat(2) * q * (q + Rat::one());
    num / den
}

/// The local limit value
/// sqrt(3) (q^2+4q-1)^4 / (pi q (q+1) (q-1)^6) * rho^n * n^{-4}.
pub fn a2_asymptotic(q: &Rat, n: usize) -> Result<f64> {
    if *q == Rat::one() {
        return Err(Error::Singular(
            "the A2 local limit constant has a pole at q = 1".into(),
        ));
    }
    if !q.is_positive() {
        return Err(Error::Singular(format!("q = {q} is not positive")));
    }
    if n == 0 {
        return Err(Error::Singular("n must be positive".into()));
    }
    let s = &(q * q + rat(4) * q - Rat::one());
    let s4 = s * s * s * s;
    let qm1 = q - Rat::one();
    let qm16 = &qm1 * &qm1 * &qm1 * &qm1 * &qm1 * &qm1;
    let den = q * (q + Rat::one()) * qm16;
    let constant = 3f64.sqrt() / std::f64::consts::PI * (s4 / den).to_f64().unwrap();
    let rho = a2_rho(q).to_f64().unwrap();
    let nf = n as f64;
    Ok(constant * rho.powi(n as i32) / (nf * nf * nf * nf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::presets;
    use crate::hecke::idempotent;

    fn simple2() -> WalkSpec<i64> {
        simple_walk_a2(2).unwrap()
    }

    #[test]
    fn build_walk_validation() {
        let sys = presets::a2_affine();
        let i = GenSubset::from_indices([0]);
        // trivial walk stays put
        let e_rep = DoubleCosetRep::new(sys.identity(), i, i).unwrap();
        let walk = build_walk(
            &sys,
            i,
            vec![(e_rep.clone(), Rat::one())],
            vec![rat(2), rat(2), rat(2)],
        )
        .unwrap();
        assert_eq!(walk.max_step(), 1);
        // wrong total mass
        let bad = build_walk(
            &sys,
            i,
            vec![(e_rep, Rat::one() / rat(2))],
            vec![rat(2), rat(2), rat(2)],
        );
        match bad {
            Err(Error::BadNormalization { defect, .. }) => assert_eq!(defect, "1/2"),
            Err(other) => panic!("expected normalization error, got {other:?}"),
            Ok(_) => panic!("expected normalization error"),
        }
        // the simple walk normalizes
        assert_eq!(simple2().max_step(), 3);
        // non-spherical cotype rejected
        assert!(matches!(
            build_walk(&sys, sys.full_set(), vec![], vec![rat(2), rat(2), rat(2)]),
            Err(Error::NonSpherical(_))
        ));
    }

    #[test]
    fn theta_of_trivial_walk_is_idempotent() {
        let sys = presets::a2_affine();
        let i = GenSubset::from_indices([0]);
        let e_rep = DoubleCosetRep::new(sys.identity(), i, i).unwrap();
        let walk = build_walk(
            &sys,
            i,
            vec![(e_rep, Rat::one())],
            vec![rat(3), rat(3), rat(3)],
        )
        .unwrap();
        let theta = theta_operator(&walk).unwrap();
        let one_i = idempotent(&sys, i, walk.params()).unwrap();
        assert_eq!(theta, one_i);
    }

    #[test]
    fn theta_of_simple_walk() {
        let walk = simple2();
        let theta = theta_operator(&walk).unwrap();
        assert_eq!(theta.support_size(), 8);
        // every coefficient is 1/(2q(q+1)^2) = 1/36 at q=2
        let expect = Rat::one() / rat(36);
        for (_, c) in theta.terms() {
            assert_eq!(c.to_poly().unwrap().eval(&HashMap::new()).unwrap(), expect);
        }
        // pi(theta) = 1
        assert!(theta.index_character().is_one());
    }

    #[test]
    fn n_step_basics() {
        let walk = simple2();
        let s0 = n_step(&walk, 0).unwrap();
        assert_eq!(s0.dist.len(), 1);
        assert!(s0.dist[0].0.is_identity());
        assert_eq!(s0.dist[0].1, WalkValue::Exact(Rat::one()));
        let s1 = n_step(&walk, 1).unwrap();
        assert_eq!(s1.dist.len(), 8);
        for (_, v) in &s1.dist {
            assert_eq!(v, &WalkValue::Exact(Rat::one() / rat(36)));
        }
        // mass conservation and support bound
        for n in 0..=10 {
            let st = n_step(&walk, n).unwrap();
            assert_eq!(st.mass(&walk), WalkValue::Exact(Rat::one()), "mass at n={n}");
            assert!(st.max_length() <= 3 * n);
        }
    }

    #[test]
    fn return_probabilities_small() {
        let walk = simple2();
        assert_eq!(
            return_probability(&walk, 0).unwrap(),
            WalkValue::Exact(Rat::one())
        );
        assert_eq!(
            return_probability(&walk, 1).unwrap(),
            WalkValue::Exact(Rat::zero())
        );
        // p(2)(A,A) = 1/(2q(q+1)) = 1/12 at q=2
        assert_eq!(
            return_probability(&walk, 2).unwrap(),
            WalkValue::Exact(Rat::one() / rat(12))
        );
    }

    #[test]
    fn oracle_agrees_with_transfer() {
        let walk = simple2();
        let series = return_probability_series(&walk, 3).unwrap();
        for n in 0..=3usize {
            let oracle = walk_oracle_small(&walk, n, ORACLE_CAP).unwrap();
            assert_eq!(series[n].exact().unwrap(), &oracle, "n = {n}");
        }
        assert!(matches!(
            walk_oracle_small(&walk, 6, ORACLE_CAP),
            Err(Error::SizeCap(_))
        ));
    }

    #[test]
    fn float_switchover() {
        let walk = simple2();
        let (_, series, _, _, _) = run_engine(&walk, 12, 8).unwrap();
        assert!(series[8].exact().is_some());
        assert!(series[9].exact().is_none());
        // the approximate continuation tracks the exact values
        let (_, exact_series, _, _, _) = run_engine(&walk, 12, 50).unwrap();
        for n in 9..=12 {
            let a = series[n].as_f64();
            let b = exact_series[n].as_f64();
            assert!((a - b).abs() <= 1e-12 * b.abs(), "n={n}: {a} vs {b}");
        }
    }

    #[test]
    fn asymptotic_formula() {
        let q = rat(2);
        assert_eq!(a2_rho(&q), Rat::new(11.into(), 12.into()));
        assert!(matches!(
            a2_asymptotic(&Rat::one(), 10),
            Err(Error::Singular(_))
        ));
        // decreasing in n beyond small n
        let v10 = a2_asymptotic(&q, 10).unwrap();
        let v20 = a2_asymptotic(&q, 20).unwrap();
        let v40 = a2_asymptotic(&q, 40).unwrap();
        assert!(v10 > v20 && v20 > v40 && v40 > 0.0);
    }
}
