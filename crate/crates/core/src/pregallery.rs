//! Pointed pregalleries and the combinatorial intersection number formulas.
//!
//! A pointed pregallery of a given type crosses or stutters one panel per
//! step; stutters are only allowed at descent positions. Its weight is the
//! monomial prod q_s^{alpha_s} (q_s-1)^{sigma_s}. Chamber constants sum
//! weights over pregalleries with a prescribed end; parabolic constants sum
//! over types m*v with m in M_K(J,v) and ends classified by double coset.

use crate::cosets::{m_reps, min_double_rep, DoubleCosetRep};
use crate::coxeter::{GroupElement, Scalar};
use crate::error::Result;
use crate::qpoly::{ParamAssignment, QPoly};
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    CrossAscent,
    CrossDescent,
    Stutter,
}

#[derive(Clone, Debug)]
pub struct PointedPregallery<T: Scalar> {
    pub start: GroupElement<T>,
    pub type_word: Vec<u8>,
    pub steps: Vec<StepKind>,
    pub end: GroupElement<T>,
    pub weight: QPoly,
}

/// Exponent profile of a pregallery: per generator, the number of
/// cross-ascents and stutters.
type Profile = (Vec<u16>, Vec<u16>);

/// Weight polynomial for a profile: prod q_s^alpha (q_s-1)^sigma, times a
/// multiplicity.
fn profile_poly(params: &ParamAssignment, alpha: &[u16], sigma: &[u16], count: u64) -> QPoly {
    let mut poly = params
        .one()
        .scale(&crate::algnum::rat(count as i64));
    for s in 0..alpha.len() {
        if alpha[s] > 0 || sigma[s] > 0 {
            let qs = params.q_s(s);
            for _ in 0..alpha[s] {
                poly = poly.try_mul(&qs).unwrap();
            }
            let qs1 = qs.try_sub(&params.one()).unwrap();
            for _ in 0..sigma[s] {
                poly = poly.try_mul(&qs1).unwrap();
            }
        }
    }
    poly
}

/// All pointed pregalleries of the given type from `start`, in branch order
/// (cross before stutter at each descent position).
pub fn enumerate_pointed<T: Scalar>(
    start: &GroupElement<T>,
    type_word: &[u8],
    params: &ParamAssignment,
) -> Vec<PointedPregallery<T>> {
    let rank = start.system().rank();
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(type_word.len());
    let mut alpha = vec![0u16; rank];
    let mut sigma = vec![0u16; rank];
    fn rec<T: Scalar>(
        start: &GroupElement<T>,
        cur: GroupElement<T>,
        type_word: &[u8],
        pos: usize,
        steps: &mut Vec<StepKind>,
        alpha: &mut Vec<u16>,
        sigma: &mut Vec<u16>,
        params: &ParamAssignment,
        out: &mut Vec<PointedPregallery<T>>,
    ) {
        if pos == type_word.len() {
            out.push(PointedPregallery {
                start: start.clone(),
                type_word: type_word.to_vec(),
                steps: steps.clone(),
                weight: profile_poly(params, alpha, sigma, 1),
                end: cur,
            });
            return;
        }
        let s = type_word[pos] as usize;
        if cur.has_right_descent(s) {
            steps.push(StepKind::CrossDescent);
            rec(start, cur.right_mul_gen(s), type_word, pos + 1, steps, alpha, sigma, params, out);
            steps.pop();
            steps.push(StepKind::Stutter);
            sigma[s] += 1;
            rec(start, cur, type_word, pos + 1, steps, alpha, sigma, params, out);
            sigma[s] -= 1;
            steps.pop();
        } else {
            steps.push(StepKind::CrossAscent);
            alpha[s] += 1;
            rec(start, cur.right_mul_gen(s), type_word, pos + 1, steps, alpha, sigma, params, out);
            alpha[s] -= 1;
            steps.pop();
        }
    }
    rec(
        start,
        start.clone(),
        type_word,
        0,
        &mut steps,
        &mut alpha,
        &mut sigma,
        params,
        &mut out,
    );
    out
}

/// Aggregated fold: map (end, alpha, sigma) -> number of pregalleries.
/// Implemented as a step-wise dynamic program so that the cost is bounded by
/// the number of distinct (element, profile) states rather than the number
/// of individual pregalleries.
fn fold_counts<T: Scalar>(
    start: &GroupElement<T>,
    type_word: &[u8],
    rank: usize,
) -> HashMap<(GroupElement<T>, Profile), u64> {
    let mut states: HashMap<(GroupElement<T>, Profile), u64> = HashMap::new();
    states.insert(
        (start.clone(), (vec![0u16; rank], vec![0u16; rank])),
        1,
    );
    for &letter in type_word {
        let s = letter as usize;
        let mut next: HashMap<(GroupElement<T>, Profile), u64> =
            HashMap::with_capacity(states.len() * 2);
        for ((cur, (alpha, sigma)), count) in states {
            if cur.has_right_descent(s) {
                let mut sig = sigma.clone();
                sig[s] += 1;
                *next
                    .entry((cur.right_mul_gen(s), (alpha.clone(), sigma)))
                    .or_insert(0) += count;
                *next.entry((cur, (alpha, sig))).or_insert(0) += count;
            } else {
                let mut alp = alpha;
                alp[s] += 1;
                *next.entry((cur.right_mul_gen(s), (alp, sigma))).or_insert(0) += count;
            }
        }
        states = next;
    }
    states
}

/// c_{u,v}^w: weights of pregalleries of type (a reduced word of v) from w
/// ending at u.
pub fn chamber_constant<T: Scalar>(
    u: &GroupElement<T>,
    v: &GroupElement<T>,
    w: &GroupElement<T>,
    params: &ParamAssignment,
) -> QPoly {
    chamber_constant_with_word(u, v.canonical_word(), w, params)
}

/// Same, with an explicit reduced word for v (used by the invariance tests).
pub fn chamber_constant_with_word<T: Scalar>(
    u: &GroupElement<T>,
    v_word: &[u8],
    w: &GroupElement<T>,
    params: &ParamAssignment,
) -> QPoly {
    let rank = w.system().rank();
    let mut total = params.zero();
    for ((end, (alpha, sigma)), count) in fold_counts(w, v_word, rank) {
        if &end == u {
            total = total
                .try_add(&profile_poly(params, &alpha, &sigma, count))
                .unwrap();
        }
    }
    total
}

/// The whole row of parabolic intersection numbers with v and w fixed:
/// map from u in R(I,J) (as elements) to c_{u,v}^w(I,J,K).
///
/// v must be (K,J)-reduced and w (I,K)-reduced. Work is split over the
/// elements of M_K(J,v).
pub fn parabolic_row<T: Scalar>(
    i_set: crate::coxeter::GenSubset,
    j_set: crate::coxeter::GenSubset,
    v: &DoubleCosetRep<T>,
    w: &DoubleCosetRep<T>,
    params: &ParamAssignment,
) -> Result<HashMap<GroupElement<T>, QPoly>> {
    debug_assert_eq!(v.j_set, j_set);
    debug_assert_eq!(w.i_set, i_set);
    debug_assert_eq!(w.j_set, v.i_set);
    let rank = w.element.system().rank();
    let ms = m_reps(v)?;
    let per_m: Vec<HashMap<(GroupElement<T>, Profile), u64>> = ms
        .par_iter()
        .map(|m| {
            let mut word = m.canonical_word().to_vec();
            word.extend_from_slice(v.element.canonical_word());
            fold_counts(&w.element, &word, rank)
        })
        .collect();
    // classify ends by double coset, with a shared rep cache
    let mut rep_cache: HashMap<GroupElement<T>, GroupElement<T>> = HashMap::new();
    let mut row: HashMap<GroupElement<T>, QPoly> = HashMap::new();
    for counts in per_m {
        for ((end, (alpha, sigma)), count) in counts {
            let rep = rep_cache
                .entry(end.clone())
                .or_insert_with(|| min_double_rep(&end, i_set, j_set).element)
                .clone();
            let poly = profile_poly(params, &alpha, &sigma, count);
            row.entry(rep)
                .and_modify(|p| *p = p.try_add(&poly).unwrap())
                .or_insert(poly);
        }
    }
    row.retain(|_, p| !p.is_zero());
    Ok(row)
}

/// c_{u,v}^w(I,J,K) via the pointed pregallery formula.
pub fn parabolic_constant<T: Scalar>(
    u: &DoubleCosetRep<T>,
    v: &DoubleCosetRep<T>,
    w: &DoubleCosetRep<T>,
    params: &ParamAssignment,
) -> Result<QPoly> {
    let j_set = u.j_set;
    let i_set = u.i_set;
    let sys = w.element.system();
    // finite support bound: zero when l(w) > l(u)+l(v)+l(w_J)
    let wj = sys.longest_element(j_set)?;
    if w.element.length() > u.element.length() + v.element.length() + wj.length() {
        return Ok(params.zero());
    }
    let row = parabolic_row(i_set, j_set, v, w, params)?;
    Ok(row.get(&u.element).cloned().unwrap_or_else(|| params.zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{presets, GenSubset};
    use crate::qpoly::ParamValue;

    fn f4_params() -> ParamAssignment {
        ParamAssignment::new(vec![
            ParamValue::Var("s".into()),
            ParamValue::Var("s".into()),
            ParamValue::Var("t".into()),
            ParamValue::Var("t".into()),
        ])
    }

    #[test]
    fn basic_enumeration() {
        let sys = presets::a2();
        let params = ParamAssignment::uniform(2, "q");
        // from identity, type (s): single ascent
        let ps = enumerate_pointed(&sys.identity(), &[0], &params);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].end, sys.generator(0).unwrap());
        assert_eq!(ps[0].weight.canonical_string(), "q");
        // from s, type (s): cross-descent (weight 1) and stutter (q-1)
        let s = sys.generator(0).unwrap();
        let ps = enumerate_pointed(&s, &[0], &params);
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].end, sys.identity());
        assert!(ps[0].weight.is_one());
        assert_eq!(ps[1].end, s);
        assert_eq!(ps[1].weight.canonical_string(), "q - 1");
        assert_eq!(ps[1].steps, vec![StepKind::Stutter]);
    }

    #[test]
    fn f4_paper_pregalleries() {
        // start w3, type m_2 * w_1 = (3,2,1) in 1-based labels
        let sys = presets::f4();
        let params = f4_params();
        let w3 = sys.from_word(&[0, 1, 2, 1, 3, 2, 1, 0]).unwrap();
        let ps = enumerate_pointed(&w3, &[2, 1, 0], &params);
        assert_eq!(ps.len(), 2);
        let mut weights: Vec<String> =
            ps.iter().map(|p| p.weight.canonical_string()).collect();
        weights.sort();
        assert_eq!(weights, vec!["s*t", "s^2*t - s*t"]); // st and (s-1)st
    }

    #[test]
    fn chamber_constant_basics() {
        let sys = presets::a2();
        let params = ParamAssignment::uniform(2, "q");
        let e = sys.identity();
        let s = sys.generator(0).unwrap();
        assert_eq!(chamber_constant(&s, &s, &e, &params).canonical_string(), "q");
        assert!(chamber_constant(&e, &s, &s, &params).is_one());
        assert_eq!(
            chamber_constant(&s, &s, &s, &params).canonical_string(),
            "q - 1"
        );
    }

    #[test]
    fn chamber_constant_word_invariance() {
        // all reduced words of the B3 longest element give the same constants
        let sys = presets::b3();
        let params = ParamAssignment::uniform(3, "q");
        let all = sys.enumerate_parabolic(sys.full_set()).unwrap();
        let v = sys.from_word(&[0, 1, 0, 1, 2, 1]).unwrap();
        let words = reduced_words(&v);
        assert!(words.len() > 1);
        let w = sys.from_word(&[1, 2, 1, 0]).unwrap();
        for u in all.iter().filter(|u| u.length() >= 4) {
            let base = chamber_constant_with_word(u, &words[0], &w, &params);
            for word in &words[1..] {
                assert_eq!(base, chamber_constant_with_word(u, word, &w, &params));
            }
        }
    }

    fn reduced_words<T: Scalar>(v: &GroupElement<T>) -> Vec<Vec<u8>> {
        if v.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for s in 0..v.system().rank() {
            if v.has_left_descent(s) {
                for mut tail in reduced_words(&v.left_mul_gen(s)) {
                    let mut word = vec![s as u8];
                    word.append(&mut tail);
                    out.push(word);
                }
            }
        }
        out
    }

    #[test]
    fn thin_chamber_oracle() {
        // at q=1 the chamber constant counts chambers d with d=u and w^{-1}d=v,
        // i.e. equals 1 iff u = w v (after matching conventions: pregalleries
        // of type v from w end at wv when no stutters happen)
        use crate::algnum::rat;
        let sys = presets::a3();
        let params = ParamAssignment::uniform(3, "q");
        let all = sys.enumerate_parabolic(sys.full_set()).unwrap();
        for v in all.iter().filter(|v| v.length() <= 3) {
            for w in all.iter().filter(|w| w.length() <= 3) {
                for u in all.iter().filter(|u| u.length() <= 4) {
                    let c = chamber_constant(u, v, w, &params);
                    let expected = if *u == w.mul(v) { 1 } else { 0 };
                    assert_eq!(c.eval_uniform(&rat(1)), rat(expected));
                }
            }
        }
    }

    #[test]
    fn f4_parabolic_constants() {
        let sys = presets::f4();
        let params = f4_params();
        let i = GenSubset::from_indices([1, 2, 3]);
        let reps: Vec<_> = crate::cosets::enumerate_r(&sys, i, i, 15);
        assert_eq!(reps.len(), 5);
        let w1 = &reps[1];
        let w3 = &reps[3];
        let vals: Vec<String> = reps
            .iter()
            .map(|u| {
                parabolic_constant(u, w1, w3, &params)
                    .unwrap()
                    .canonical_string()
            })
            .collect();
        assert_eq!(vals[0], "0");
        assert_eq!(vals[1], "1");
        assert_eq!(vals[2], "s*t^2 + s*t + s");
        // (s-1)(st^2+st+s+1) + s^3 t(t^2+t+1)
        let vars = params.vars().clone();
        let s = QPoly::var(&vars, 0);
        let t = QPoly::var(&vars, 1);
        let one = params.one();
        let inner = &(&(&(&s * &t) * &t) + &(&s * &t)) + &(&s + &one);
        let part1 = &(&s - &one) * &inner;
        let t_phi3 = &(&(&t * &t) + &t) + &one;
        let s3t = &(&(&s * &s) * &s) * &t;
        let part2 = &s3t * &t_phi3;
        assert_eq!(vals[3], (&part1 + &part2).canonical_string());
        assert_eq!(vals[4], "s^4*t^3");
    }

    #[test]
    fn finite_support_shortcut() {
        let sys = presets::f4();
        let params = f4_params();
        let i = GenSubset::from_indices([1, 2, 3]);
        let reps: Vec<_> = crate::cosets::enumerate_r(&sys, i, i, 15);
        // l(w4)=15 > l(e)+l(w1)+l(w_I)=0+1+9, so the constant is zero
        let c = parabolic_constant(&reps[0], &reps[1], &reps[4], &params).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn nonnegativity_f4_row() {
        // structure constants are cardinalities: integer coefficients, and
        // nonnegative values at any thick parameter choice (raw coefficients
        // can be negative, e.g. c_{w3,w1}^{w3} above)
        use crate::algnum::rat;
        let sys = presets::f4();
        let params = f4_params();
        let i = GenSubset::from_indices([1, 2, 3]);
        let reps: Vec<_> = crate::cosets::enumerate_r(&sys, i, i, 15);
        for w in &reps {
            let row = parabolic_row(i, i, &reps[1], w, &params).unwrap();
            for (_, poly) in row {
                assert!(poly.coefficients_integral());
                for qv in 1..=4i64 {
                    let val = poly.eval_uniform(&rat(qv));
                    assert!(val.is_integer() && val >= rat(0));
                }
            }
        }
    }
}
