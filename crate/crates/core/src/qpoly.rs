//! Multivariate polynomials over Q in the building parameters q_s.
//!
//! The parameter assignment maps each generator to a named variable or an
//! exact rational; the variable universe and its order are fixed by first
//! appearance there. canonical_string is the deterministic rendering used by
//! the CLI and golden tests.

use crate::algnum::{rat, Rat};
use crate::coxeter::{CoxeterMatrix, GroupElement, Scalar};
use crate::error::{Error, Result};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

pub type Mono = Vec<u16>;

#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Var(String),
    Const(Rat),
}

#[derive(Clone, Debug)]
pub struct ParamAssignment {
    vars: Arc<Vec<String>>,
    entries: Vec<ParamEntry>,
}

#[derive(Clone, Debug)]
enum ParamEntry {
    Var(usize),
    Const(Rat),
}

impl ParamAssignment {
    pub fn new(values: Vec<ParamValue>) -> ParamAssignment {
        let mut vars: Vec<String> = Vec::new();
        let mut entries = Vec::with_capacity(values.len());
        for v in values {
            match v {
                ParamValue::Var(name) => {
                    let idx = match vars.iter().position(|x| *x == name) {
                        Some(i) => i,
                        None => {
                            vars.push(name);
                            vars.len() - 1
                        }
                    };
                    entries.push(ParamEntry::Var(idx));
                }
                ParamValue::Const(c) => entries.push(ParamEntry::Const(c)),
            }
        }
        ParamAssignment {
            vars: Arc::new(vars),
            entries,
        }
    }

    /// Every generator gets the same named variable.
    pub fn uniform(rank: usize, name: &str) -> ParamAssignment {
        ParamAssignment::new(vec![ParamValue::Var(name.to_string()); rank])
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    /// The parameter of generator s as a polynomial.
    pub fn q_s(&self, s: usize) -> QPoly {
        match &self.entries[s] {
            ParamEntry::Var(i) => QPoly::var(&self.vars, *i),
            ParamEntry::Const(c) => QPoly::constant(&self.vars, c.clone()),
        }
    }

    /// Warning text if generators joined by a finite odd bond get different
    /// parameters; regular buildings force equality there.
    pub fn odd_bond_warning(&self, matrix: &CoxeterMatrix) -> Option<String> {
        for s in 0..matrix.rank().min(self.entries.len()) {
            for t in s + 1..matrix.rank().min(self.entries.len()) {
                let m = matrix.m(s, t);
                if m != 0 && m % 2 == 1 && !self.entries_equal(s, t) {
                    return Some(format!(
                        "generators {s} and {t} are joined by an odd bond (m={m}) but have different parameters"
                    ));
                }
            }
        }
        None
    }

    fn entries_equal(&self, s: usize, t: usize) -> bool {
        match (&self.entries[s], &self.entries[t]) {
            (ParamEntry::Var(a), ParamEntry::Var(b)) => a == b,
            (ParamEntry::Const(a), ParamEntry::Const(b)) => a == b,
            _ => false,
        }
    }

    pub fn zero(&self) -> QPoly {
        QPoly::zero_over(&self.vars)
    }

    pub fn one(&self) -> QPoly {
        QPoly::one_over(&self.vars)
    }

    /// q_w = product of q_s over a reduced word of w.
    pub fn q_of<T: Scalar>(&self, w: &GroupElement<T>) -> QPoly {
        let mut exps = vec![0u16; self.vars.len()];
        let mut coeff = Rat::one();
        for &s in w.canonical_word() {
            match &self.entries[s as usize] {
                ParamEntry::Var(i) => exps[*i] += 1,
                ParamEntry::Const(c) => coeff *= c,
            }
        }
        QPoly::monomial(&self.vars, exps, coeff)
    }
}

// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Mono, Rat>,
}

/// Total degree descending, then exponent vector lex descending.
fn grlex_desc(a: &Mono, b: &Mono) -> std::cmp::Ordering {
    let da: u32 = a.iter().map(|&e| u32::from(e)).sum();
    let db: u32 = b.iter().map(|&e| u32::from(e)).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl QPoly {
    pub fn zero_over(vars: &Arc<Vec<String>>) -> QPoly {
        QPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one_over(vars: &Arc<Vec<String>>) -> QPoly {
        QPoly::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Arc<Vec<String>>, c: Rat) -> QPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0u16; vars.len()], c);
        }
        QPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_i64_over(vars: &Arc<Vec<String>>, v: i64) -> QPoly {
        QPoly::constant(vars, rat(v))
    }

    pub fn var(vars: &Arc<Vec<String>>, index: usize) -> QPoly {
        let mut exps = vec![0u16; vars.len()];
        exps[index] = 1;
        QPoly::monomial(vars, exps, Rat::one())
    }

    pub fn monomial(vars: &Arc<Vec<String>>, exps: Mono, coeff: Rat) -> QPoly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        QPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// 1 + x + ... + x^(n-1) in the variable at `index`.
    pub fn phi(vars: &Arc<Vec<String>>, index: usize, n: u16) -> QPoly {
        let mut terms = BTreeMap::new();
        for k in 0..n {
            let mut exps = vec![0u16; vars.len()];
            exps[index] = k;
            terms.insert(exps, Rat::one());
        }
        QPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map_or(false, |(m, c)| m.iter().all(|&e| e == 0) && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn coefficients_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn same_universe(&self, other: &QPoly) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn try_add(&self, other: &QPoly) -> Result<QPoly> {
        self.same_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &QPoly) -> Result<QPoly> {
        self.same_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &QPoly) -> Result<QPoly> {
        self.same_universe(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                add_term(&mut terms, m, ca * cb);
            }
        }
        Ok(QPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero_over(&self.vars);
        }
        QPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms
            .iter()
            .min_by(|(a, _), (b, _)| grlex_desc(a, b))
            .map(|(m, c)| (m, c))
    }

    /// Exact quotient self / divisor, or an error carrying the remainder.
    pub fn exact_div(&self, divisor: &QPoly) -> Result<QPoly> {
        self.same_universe(divisor)?;
        if divisor.is_zero() {
            return Err(Error::Internal("division by zero polynomial".into()));
        }
        let (dm, dc) = divisor.leading().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quo = QPoly::zero_over(&self.vars);
        while let Some((rm, rc)) = rem.leading() {
            if rm.iter().zip(&dm).any(|(r, d)| r < d) {
                return Err(Error::InexactDivision {
                    remainder: rem.canonical_string(),
                });
            }
            let qm: Mono = rm.iter().zip(&dm).map(|(r, d)| r - d).collect();
            let qc = rc / &dc;
            let t = QPoly::monomial(&self.vars, qm, qc);
            rem = rem.try_sub(&t.try_mul(divisor)?)?;
            add_term(&mut quo.terms, t.terms.keys().next().unwrap().clone(), t.terms.values().next().unwrap().clone());
        }
        Ok(quo)
    }

    pub fn eval(&self, values: &HashMap<String, Rat>) -> Result<Rat> {
        let assigned: Vec<Option<&Rat>> = self.vars.iter().map(|v| values.get(v)).collect();
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = assigned[i]
                    .ok_or_else(|| Error::UnassignedVariable(self.vars[i].clone()))?;
                let mut p = Rat::one();
                for _ in 0..e {
                    p *= v;
                }
                term *= p;
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluation with every variable set to the same rational.
    pub fn eval_uniform(&self, value: &Rat) -> Rat {
        let map: HashMap<String, Rat> = self
            .vars
            .iter()
            .map(|v| (v.clone(), value.clone()))
            .collect();
        self.eval(&map).unwrap()
    }

    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| grlex_desc(a, b));
        let mut out = String::new();
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = self.mono_string(m);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    fn mono_string(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        parts.join("*")
    }
}

// ---------------------------------------------------------------------------

/// A ratio of polynomials. Denominators arise from the parabolic idempotents
/// 1_I = (1/N(I)) sum T_w; the reduction here is heuristic (exact division in
/// either direction, constant denominators cleared) and equality is decided
/// by cross multiplication, so unreduced representations are still compared
/// correctly.
#[derive(Clone)]
pub struct QRatio {
    num: QPoly,
    den: QPoly,
}

impl QRatio {
    pub fn from_poly(num: QPoly) -> QRatio {
        let den = QPoly::one_over(num.vars());
        QRatio { num, den }
    }

    pub fn new(num: QPoly, den: QPoly) -> Result<QRatio> {
        num.same_universe(&den)?;
        if den.is_zero() {
            return Err(Error::Internal("zero denominator".into()));
        }
        let mut r = QRatio { num, den };
        r.reduce();
        Ok(r)
    }

    pub fn zero_over(vars: &Arc<Vec<String>>) -> QRatio {
        QRatio::from_poly(QPoly::zero_over(vars))
    }

    pub fn one_over(vars: &Arc<Vec<String>>) -> QRatio {
        QRatio::from_poly(QPoly::one_over(vars))
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = QPoly::one_over(self.num.vars());
            return;
        }
        if self.den.is_one() {
            return;
        }
        if let Ok(q) = self.num.exact_div(&self.den) {
            self.num = q;
            self.den = QPoly::one_over(self.num.vars());
            return;
        }
        if let Ok(q) = self.den.exact_div(&self.num) {
            self.num = QPoly::one_over(self.num.vars());
            self.den = q;
        }
        if self.den.num_terms() == 1 {
            if let Some((m, c)) = self.den.leading() {
                if m.iter().all(|&e| e == 0) {
                    let inv = Rat::one() / c.clone();
                    self.num = self.num.scale(&inv);
                    self.den = QPoly::one_over(self.num.vars());
                }
            }
        }
    }

    pub fn add(&self, other: &QRatio) -> Result<QRatio> {
        if self.den == other.den {
            return QRatio::new(self.num.try_add(&other.num)?, self.den.clone());
        }
        let num = self
            .num
            .try_mul(&other.den)?
            .try_add(&other.num.try_mul(&self.den)?)?;
        QRatio::new(num, self.den.try_mul(&other.den)?)
    }

    pub fn sub(&self, other: &QRatio) -> Result<QRatio> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QRatio {
        QRatio {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &QRatio) -> Result<QRatio> {
        QRatio::new(
            self.num.try_mul(&other.num)?,
            self.den.try_mul(&other.den)?,
        )
    }

    pub fn mul_poly(&self, p: &QPoly) -> Result<QRatio> {
        QRatio::new(self.num.try_mul(p)?, self.den.clone())
    }

    pub fn div_poly(&self, p: &QPoly) -> Result<QRatio> {
        QRatio::new(self.num.clone(), self.den.try_mul(p)?)
    }

    /// The ratio as a polynomial, if the division is exact.
    pub fn to_poly(&self) -> Result<QPoly> {
        self.num.exact_div(&self.den)
    }

    pub fn eval(&self, values: &HashMap<String, Rat>) -> Result<Rat> {
        let d = self.den.eval(values)?;
        if d.is_zero() {
            return Err(Error::Internal("denominator vanishes at this point".into()));
        }
        Ok(self.num.eval(values)? / d)
    }

    pub fn canonical_string(&self) -> String {
        if self.den.is_one() {
            self.num.canonical_string()
        } else {
            format!(
                "({}) / ({})",
                self.num.canonical_string(),
                self.den.canonical_string()
            )
        }
    }
}

impl PartialEq for QRatio {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        match (
            self.num.try_mul(&other.den),
            other.num.try_mul(&self.den),
        ) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for QRatio {}

impl std::fmt::Debug for QRatio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl std::fmt::Display for QRatio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

fn add_term(terms: &mut BTreeMap<Mono, Rat>, m: Mono, c: Rat) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl std::fmt::Debug for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl std::fmt::Display for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl std::ops::Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        self.try_add(rhs).expect("variable universe mismatch")
    }
}

impl std::ops::Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self.try_sub(rhs).expect("variable universe mismatch")
    }
}

impl std::ops::Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.try_mul(rhs).expect("variable universe mismatch")
    }
}
