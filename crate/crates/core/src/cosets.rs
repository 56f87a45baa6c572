//! Minimal coset and double coset representatives, stabilizer cotypes, the
//! x*w*z factorization, and Poincare polynomials.

use crate::coxeter::{CoxeterSystem, GenSubset, GroupElement, Scalar};
use crate::error::{Error, Result};
use crate::qpoly::{ParamAssignment, QPoly};
use std::collections::HashSet;

/// The (I,J)-reduced representative of a double coset W_I w W_J.
#[derive(Clone, Debug)]
pub struct DoubleCosetRep<T: Scalar> {
    pub element: GroupElement<T>,
    pub i_set: GenSubset,
    pub j_set: GenSubset,
}

impl<T: Scalar> PartialEq for DoubleCosetRep<T> {
    fn eq(&self, other: &Self) -> bool {
        self.element == other.element && self.i_set == other.i_set && self.j_set == other.j_set
    }
}
impl<T: Scalar> Eq for DoubleCosetRep<T> {}

impl<T: Scalar> DoubleCosetRep<T> {
    pub fn new(element: GroupElement<T>, i_set: GenSubset, j_set: GenSubset) -> Result<Self> {
        if !is_reduced(&element, i_set, j_set) {
            return Err(Error::NotReduced {
                word: format!("{element:?}"),
                i: i_set.to_string(),
                j: j_set.to_string(),
            });
        }
        Ok(DoubleCosetRep {
            element,
            i_set,
            j_set,
        })
    }
}

/// No left descents in I and no right descents in J.
pub fn is_reduced<T: Scalar>(w: &GroupElement<T>, i_set: GenSubset, j_set: GenSubset) -> bool {
    i_set.iter().all(|s| !w.has_left_descent(s)) && j_set.iter().all(|s| !w.has_right_descent(s))
}

/// Minimal length representative of the coset w W_J.
pub fn min_coset_rep<T: Scalar>(w: &GroupElement<T>, j_set: GenSubset) -> GroupElement<T> {
    let mut w = w.clone();
    'outer: loop {
        for s in j_set.iter() {
            if w.has_right_descent(s) {
                w = w.right_mul_gen(s);
                continue 'outer;
            }
        }
        return w;
    }
}

/// Minimal length representative of the coset W_I w.
pub fn min_left_coset_rep<T: Scalar>(w: &GroupElement<T>, i_set: GenSubset) -> GroupElement<T> {
    let mut w = w.clone();
    'outer: loop {
        for s in i_set.iter() {
            if w.has_left_descent(s) {
                w = w.left_mul_gen(s);
                continue 'outer;
            }
        }
        return w;
    }
}

/// Minimal length representative of W_I w W_J, by alternately stripping left
/// and right descents.
pub fn min_double_rep<T: Scalar>(
    w: &GroupElement<T>,
    i_set: GenSubset,
    j_set: GenSubset,
) -> DoubleCosetRep<T> {
    let mut w = w.clone();
    loop {
        let stripped = min_left_coset_rep(&min_coset_rep(&w, j_set), i_set);
        if stripped.length() == w.length() && stripped == w {
            return DoubleCosetRep {
                element: w,
                i_set,
                j_set,
            };
        }
        w = stripped;
    }
}

/// All (I,J)-reduced elements of length <= max_len, sorted by length then
/// shortlex. Runs a breadth-first search over the prefix-closed set of
/// left-I-minimal elements, so infinite groups only cost the ball searched.
pub fn enumerate_r<T: Scalar>(
    sys: &CoxeterSystem<T>,
    i_set: GenSubset,
    j_set: GenSubset,
    max_len: usize,
) -> Vec<DoubleCosetRep<T>> {
    let rank = sys.rank();
    let mut out = Vec::new();
    let mut level = vec![sys.identity()];
    let mut seen: HashSet<GroupElement<T>> = level.iter().cloned().collect();
    for len in 0..=max_len {
        let mut sorted = level.clone();
        sorted.sort_by(|a, b| a.canonical_word().cmp(b.canonical_word()));
        for w in &sorted {
            if j_set.iter().all(|s| !w.has_right_descent(s)) {
                out.push(DoubleCosetRep {
                    element: w.clone(),
                    i_set,
                    j_set,
                });
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &level {
            for s in 0..rank {
                if !w.has_right_descent(s) {
                    let ws = w.right_mul_gen(s);
                    if i_set.iter().all(|t| !ws.has_left_descent(t)) && seen.insert(ws.clone()) {
                        next.push(ws);
                    }
                }
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    out
}

/// I cap wJw^{-1} as a subset of I, for (I,J)-reduced w: the generators s in
/// I with w^{-1} s w equal to a generator of J.
pub fn stabilizer_cotype<T: Scalar>(rep: &DoubleCosetRep<T>) -> GenSubset {
    let w = &rep.element;
    let winv = w.inverse();
    GenSubset::from_indices(rep.i_set.iter().filter(|&s| {
        let conj = winv.right_mul_gen(s).mul(w);
        conj.length() == 1 && rep.j_set.contains(conj.canonical_word()[0] as usize)
    }))
}

/// M_I(J,w): minimal length representatives of W_I / W_{I cap wJw^{-1}},
/// sorted by length then shortlex.
pub fn m_reps<T: Scalar>(rep: &DoubleCosetRep<T>) -> Result<Vec<GroupElement<T>>> {
    let sys = rep.element.system();
    let cotype = stabilizer_cotype(rep);
    let all = sys.enumerate_parabolic(rep.i_set)?;
    Ok(all
        .into_iter()
        .filter(|x| cotype.iter().all(|s| !x.has_right_descent(s)))
        .collect())
}

/// The unique triple v = x*w*z with additive lengths.
#[derive(Clone, Debug)]
pub struct Factorization<T: Scalar> {
    pub x: GroupElement<T>,
    pub w: DoubleCosetRep<T>,
    pub z: GroupElement<T>,
}

pub fn factorize<T: Scalar>(
    v: &GroupElement<T>,
    i_set: GenSubset,
    j_set: GenSubset,
) -> Factorization<T> {
    let w = min_double_rep(v, i_set, j_set);
    let a = min_coset_rep(v, j_set);
    let x = a.mul(&w.element.inverse());
    let z = a.inverse().mul(v);
    debug_assert_eq!(
        x.length() + w.element.length() + z.length(),
        v.length(),
        "factorization lengths must be additive"
    );
    debug_assert_eq!(x.mul(&w.element).mul(&z), *v);
    Factorization { x, w, z }
}

/// Poincare polynomial N(I) = sum of q_w over W_I.
pub fn poincare<T: Scalar>(
    sys: &CoxeterSystem<T>,
    i_set: GenSubset,
    params: &ParamAssignment,
) -> Result<QPoly> {
    let mut total = params.zero();
    for w in sys.enumerate_parabolic(i_set)? {
        total = total.try_add(&params.q_of(&w))?;
    }
    Ok(total)
}

/// Every element of W_I w W_J exactly once, as x*w*z.
pub fn double_coset_elements<T: Scalar>(rep: &DoubleCosetRep<T>) -> Result<Vec<GroupElement<T>>> {
    let sys = rep.element.system();
    let xs = m_reps(rep)?;
    let zs = sys.enumerate_parabolic(rep.j_set)?;
    let mut out = Vec::with_capacity(xs.len() * zs.len());
    for x in &xs {
        let xw = x.mul(&rep.element);
        for z in &zs {
            out.push(xw.mul(z));
        }
    }
    Ok(out)
}
