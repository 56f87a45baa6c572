//! Cardinalities of generalised spheres as exact polynomials.

use crate::cosets::{double_coset_elements, enumerate_r, poincare, stabilizer_cotype, DoubleCosetRep};
use crate::coxeter::{CoxeterSystem, GenSubset, Scalar};
use crate::error::{Error, Result};
use crate::qpoly::{ParamAssignment, QPoly};

/// |F(A,J,w)| = N(I) q_w / N(I cap wJw^{-1}).
pub fn sphere_size<T: Scalar>(rep: &DoubleCosetRep<T>, params: &ParamAssignment) -> Result<QPoly> {
    let sys = rep.element.system();
    if !sys.is_spherical(rep.i_set) {
        return Err(Error::NonSpherical(rep.i_set.to_string()));
    }
    let n_i = poincare(&sys, rep.i_set, params)?;
    let stab = stabilizer_cotype(rep);
    let n_stab = poincare(&sys, stab, params)?;
    let num = n_i.try_mul(&params.q_of(&rep.element))?;
    num.exact_div(&n_stab)
}

/// Same count via the coset sum: (1/N(J)) sum of q_z over W_I w W_J.
pub fn sphere_size_via_cosets<T: Scalar>(
    rep: &DoubleCosetRep<T>,
    params: &ParamAssignment,
) -> Result<QPoly> {
    let sys = rep.element.system();
    if !sys.is_spherical(rep.j_set) {
        return Err(Error::NonSpherical(rep.j_set.to_string()));
    }
    let n_j = poincare(&sys, rep.j_set, params)?;
    let mut total = params.zero();
    for z in double_coset_elements(rep)? {
        total = total.try_add(&params.q_of(&z))?;
    }
    total.exact_div(&n_j)
}

/// Sum of sphere sizes over all (I,J)-reduced w of length n.
pub fn distance_sphere_size<T: Scalar>(
    sys: &CoxeterSystem<T>,
    i_set: GenSubset,
    j_set: GenSubset,
    n: usize,
    params: &ParamAssignment,
) -> Result<QPoly> {
    let mut total = params.zero();
    for rep in enumerate_r(sys, i_set, j_set, n) {
        if rep.element.length() == n {
            total = total.try_add(&sphere_size(&rep, params)?)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::presets;

    #[test]
    fn trivial_spheres() {
        let sys = presets::f4();
        let i = GenSubset::from_indices([1, 2, 3]);
        let params = ParamAssignment::uniform(4, "q");
        let rep = DoubleCosetRep::new(sys.identity(), i, i).unwrap();
        assert!(sphere_size(&rep, &params).unwrap().is_one());
        assert!(sphere_size_via_cosets(&rep, &params).unwrap().is_one());
    }

    #[test]
    fn chamber_case_is_q_w() {
        // J = empty: F(A,empty,w) has N(I) q_w chambers; with I empty too the
        // sphere size is just q_w
        let sys = presets::b3();
        let params = ParamAssignment::uniform(3, "q");
        let w = sys.from_word(&[0, 1, 2]).unwrap();
        let rep = DoubleCosetRep::new(w.clone(), GenSubset::EMPTY, GenSubset::EMPTY).unwrap();
        assert_eq!(sphere_size(&rep, &params).unwrap(), params.q_of(&w));
        assert_eq!(
            sphere_size_via_cosets(&rep, &params).unwrap(),
            params.q_of(&w)
        );
    }

    #[test]
    fn a2_affine_vertex_sphere() {
        // vertex cotype in affine A2: q(q^2+q+1)(q+1)
        let sys = presets::a2_affine();
        let i = GenSubset::from_indices([1, 2]);
        let params = ParamAssignment::uniform(3, "q");
        let poly = distance_sphere_size(&sys, i, i, 1, &params).unwrap();
        let vars = params.vars().clone();
        let expect = &(&QPoly::var(&vars, 0) * &QPoly::phi(&vars, 0, 3)) * &QPoly::phi(&vars, 0, 2);
        assert_eq!(poly, expect);
    }

    #[test]
    fn affine_a_family() {
        // q phi_{n+1}(q) phi_n(q) for affine A_n
        for n in 2..=4usize {
            let sys = presets::a_affine(n);
            let i = GenSubset::from_indices(1..=n);
            let params = ParamAssignment::uniform(n + 1, "q");
            let vars = params.vars().clone();
            let poly = distance_sphere_size(&sys, i, i, 1, &params).unwrap();
            let expect = &(&QPoly::var(&vars, 0) * &QPoly::phi(&vars, 0, (n + 1) as u16))
                * &QPoly::phi(&vars, 0, n as u16);
            assert_eq!(poly, expect, "affine A_{n}");
        }
    }

    #[test]
    fn affine_c_family() {
        for n in 2..=3usize {
            let sys = presets::c_affine(n);
            let params = ParamAssignment::uniform(n + 1, "q");
            let vars = params.vars().clone();
            let q = QPoly::var(&vars, 0);
            // special end node 0: q phi_{2n}(q)
            let i = GenSubset::from_indices(1..=n);
            let poly = distance_sphere_size(&sys, i, i, 1, &params).unwrap();
            let expect = &q * &QPoly::phi(&vars, 0, 2 * n as u16);
            assert_eq!(poly, expect, "affine C_{n} special");
            // non-special node k: q phi_{2k}(q) phi_{2(n-k)}(q)
            for k in 1..n {
                let i = GenSubset::from_indices((0..=n).filter(|&x| x != k));
                let poly = distance_sphere_size(&sys, i, i, 1, &params).unwrap();
                let expect = &(&q * &QPoly::phi(&vars, 0, 2 * k as u16))
                    * &QPoly::phi(&vars, 0, 2 * (n - k) as u16);
                assert_eq!(poly, expect, "affine C_{n} node {k}");
            }
        }
    }

    #[test]
    fn two_paths_agree_f4() {
        let sys = presets::f4();
        let i = GenSubset::from_indices([1, 2, 3]);
        let params = ParamAssignment::new(vec![
            crate::qpoly::ParamValue::Var("s".into()),
            crate::qpoly::ParamValue::Var("s".into()),
            crate::qpoly::ParamValue::Var("t".into()),
            crate::qpoly::ParamValue::Var("t".into()),
        ]);
        for rep in enumerate_r(&sys, i, i, 15) {
            let a = sphere_size(&rep, &params).unwrap();
            let b = sphere_size_via_cosets(&rep, &params).unwrap();
            assert_eq!(a, b, "rep {:?}", rep.element);
            assert!(a.coefficients_nonnegative());
        }
    }

    #[test]
    fn thin_oracle_b3() {
        use crate::algnum::rat;
        let sys = presets::b3();
        let subsets = [
            GenSubset::EMPTY,
            GenSubset::from_indices([0]),
            GenSubset::from_indices([0, 1]),
            GenSubset::from_indices([1, 2]),
            sys.full_set(),
        ];
        let params = ParamAssignment::uniform(3, "q");
        for &i in &subsets {
            for &j in &subsets {
                for rep in enumerate_r(&sys, i, j, 9) {
                    let poly = sphere_size(&rep, &params).unwrap();
                    let coset = double_coset_elements(&rep).unwrap();
                    let wj = sys.enumerate_parabolic(j).unwrap().len();
                    assert_eq!(
                        poly.eval_uniform(&rat(1)),
                        rat((coset.len() / wj) as i64),
                        "thin count mismatch at I={i} J={j} w={:?}",
                        rep.element
                    );
                }
            }
        }
    }
}
