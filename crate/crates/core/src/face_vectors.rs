//! Exact f/h/g/γ transforms, clique functions, and the symmetric-polynomial
//! clique counts for complete multipartite graphs with cycle-like parts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::CliqueVector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FaceVectorError {
    #[error("expected a vector of length {expected}, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("the leading entry (f_-1 or h_0) must be 1")]
    LeadingNotOne,
    #[error("h-vector is not palindromic; the complex is not Eulerian and gamma is undefined")]
    NotPalindromic,
    #[error("part {part} has {intra} internal edges but {size} vertices")]
    OutOfClass { part: usize, size: usize, intra: usize },
    #[error("clique function needs a positive leading coefficient")]
    NonPositiveLeading,
    #[error("need at least two parts")]
    TooFewParts,
}

/// `C(n, k)` for integer arguments, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `σ_j(x_1, …, x_r)`.
pub fn elementary_symmetric_big(xs: &[BigInt], j: usize) -> BigInt {
    let mut e = vec![BigInt::zero(); j + 1];
    e[0] = BigInt::one();
    for x in xs {
        for k in (1..=j).rev() {
            let add = &e[k - 1] * x;
            e[k] += add;
        }
    }
    e.swap_remove(j)
}

pub fn elementary_symmetric(xs: &[usize], j: usize) -> BigInt {
    let big: Vec<BigInt> = xs.iter().map(|&x| BigInt::from(x)).collect();
    elementary_symmetric_big(&big, j)
}

fn check_len(v: &[BigInt], expected: usize) -> Result<(), FaceVectorError> {
    if v.len() != expected {
        return Err(FaceVectorError::BadLength { expected, got: v.len() });
    }
    if !v[0].is_one() {
        return Err(FaceVectorError::LeadingNotOne);
    }
    Ok(())
}

/// `(f_{−1}, …, f_{d−1}) ↦ (h_0, …, h_d)` with
/// `h_i = Σ_{j≤i} (−1)^{i−j} C(d−j, i−j) f_{j−1}`.
pub fn f_to_h(f: &[BigInt], d: usize) -> Result<Vec<BigInt>, FaceVectorError> {
    check_len(f, d + 1)?;
    let d = d as i64;
    Ok((0..=d)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let term = binomial(d - j, i - j) * &f[j as usize];
                    if (i - j) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect())
}

/// Inverse of [`f_to_h`]: `f_i = Σ_{j≤i+1} C(d−j, i+1−j) h_j`.
pub fn h_to_f(h: &[BigInt], d: usize) -> Result<Vec<BigInt>, FaceVectorError> {
    check_len(h, d + 1)?;
    let d = d as i64;
    Ok((-1..d).map(|i| (0..=i + 1).map(|j| binomial(d - j, i + 1 - j) * &h[j as usize]).sum()).collect())
}

pub fn dehn_sommerville_holds(h: &[BigInt]) -> bool {
    h.iter().eq(h.iter().rev())
}

/// `g_0 = 1`, `g_i = h_i − h_{i−1}` for `1 ≤ i ≤ ⌊d/2⌋`.
pub fn h_to_g(h: &[BigInt]) -> Vec<BigInt> {
    let d = h.len().saturating_sub(1);
    (0..=d / 2).map(|i| if i == 0 { h[0].clone() } else { &h[i] - &h[i - 1] }).collect()
}

/// Coefficients of `Σ h_i x^i` in the basis `x^i (1+x)^{d−2i}`.
pub fn h_to_gamma(h: &[BigInt]) -> Result<Vec<BigInt>, FaceVectorError> {
    if !dehn_sommerville_holds(h) {
        return Err(FaceVectorError::NotPalindromic);
    }
    let d = h.len() as i64 - 1;
    let mut gamma: Vec<BigInt> = Vec::new();
    for i in 0..=d / 2 {
        let known: BigInt = gamma.iter().enumerate().map(|(j, gj)| gj * binomial(d - 2 * j as i64, i - j as i64)).sum();
        gamma.push(&h[i as usize] - known);
    }
    Ok(gamma)
}

/// Expands a γ-vector back into the h-vector of length `d + 1`.
pub fn gamma_to_h(gamma: &[BigInt], d: usize) -> Vec<BigInt> {
    let d = d as i64;
    (0..=d).map(|k| gamma.iter().enumerate().map(|(i, g)| g * binomial(d - 2 * i as i64, k - i as i64)).sum()).collect()
}

/// f, h and (when defined) g and γ of one complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceVectorSet {
    pub d: usize,
    #[serde(serialize_with = "crate::json::ser_bigint_seq")]
    pub f: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser_bigint_seq")]
    pub h: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser_opt_bigint_seq")]
    pub g: Option<Vec<BigInt>>,
    #[serde(serialize_with = "crate::json::ser_opt_bigint_seq")]
    pub gamma: Option<Vec<BigInt>>,
}

impl FaceVectorSet {
    /// From `(f_{−1}, …, f_{d−1})`; g and γ are filled in only for palindromic h.
    pub fn from_f(f: Vec<BigInt>) -> Result<Self, FaceVectorError> {
        let d = f.len().saturating_sub(1);
        let h = f_to_h(&f, d)?;
        let (g, gamma) = match h_to_gamma(&h) {
            Ok(gamma) => (Some(h_to_g(&h)), Some(gamma)),
            Err(_) => (None, None),
        };
        Ok(FaceVectorSet { d, f, h, g, gamma })
    }

    /// Face numbers of a clique complex: `f_{i−1} = e_i`.
    pub fn from_clique_vector(cv: &CliqueVector) -> Self {
        let f = cv.counts().iter().map(|c| BigInt::from(c.clone())).collect();
        Self::from_f(f).expect("clique vectors start with e_0 = 1")
    }

    /// g for any complex, even when γ is undefined.
    pub fn g_unchecked(&self) -> Vec<BigInt> {
        h_to_g(&self.h)
    }
}

/// `F(G) = c_k e_k + … + c_1 e_1 + c_0` with `c_k > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueFunction {
    /// `c_0, c_1, …, c_k` in ascending order.
    coeffs: Vec<BigRational>,
}

impl CliqueFunction {
    /// From coefficients listed leading first, `(c_k, …, c_0)`.
    pub fn new(descending: Vec<BigRational>) -> Result<Self, FaceVectorError> {
        match descending.first() {
            Some(c) if c.is_positive() && descending.len() >= 2 => {}
            _ => return Err(FaceVectorError::NonPositiveLeading),
        }
        let mut coeffs = descending;
        coeffs.reverse();
        Ok(CliqueFunction { coeffs })
    }

    /// `F = e_k`.
    pub fn clique_count(k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        CliqueFunction { coeffs }
    }

    /// A face function `a_ℓ f_ℓ + … + a_0 f_0 + a_{−1} f_{−1}` given leading
    /// first; stored through the shift `f_{i} = e_{i+1}`.
    pub fn from_face_function(descending: Vec<BigRational>) -> Result<Self, FaceVectorError> {
        Self::new(descending)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_i`, zero past the order.
    pub fn coefficient(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, e: &CliqueVector) -> BigRational {
        self.coeffs.iter().enumerate().map(|(i, c)| c * BigRational::from_integer(BigInt::from(e.get(i)))).sum()
    }

    /// Evaluates on the f-vector of a complex: `f_{i−1}` plays `e_i`.
    pub fn eval_faces(&self, f: &[BigInt]) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer(f.get(i).cloned().unwrap_or_default()))
            .sum()
    }

    /// Coefficients `c'_j = Σ_ℓ c_ℓ C(j, ℓ−j)` such that on complete
    /// multipartite graphs with cycle parts `F = Σ_j c'_j σ_j(part sizes)`.
    pub fn symmetric_coefficients(&self) -> Vec<BigRational> {
        let k = self.order() as i64;
        (0..=k)
            .map(|j| (0..=k).map(|l| &self.coeffs[l as usize] * BigRational::from_integer(binomial(j, l - j))).sum())
            .collect()
    }
}

/// `e_ℓ = Σ_j C(j, ℓ−j) σ_j(|V_1|, …, |V_r|)` for a complete multipartite graph
/// whose parts are triangle-free, of maximum degree 2, with as many edges as
/// vertices.
pub fn multipartite_clique_count(parts: &[usize], intra_edges: &[usize], l: usize) -> Result<BigInt, FaceVectorError> {
    if parts.len() != intra_edges.len() {
        return Err(FaceVectorError::BadLength { expected: parts.len(), got: intra_edges.len() });
    }
    for (i, (&p, &m)) in parts.iter().zip(intra_edges).enumerate() {
        // sizes below 4 cannot host a triangle-free 2-regular graph
        if p != m || p < 4 {
            return Err(FaceVectorError::OutOfClass { part: i, size: p, intra: m });
        }
    }
    let l = l as i64;
    Ok((0..=l.min(parts.len() as i64)).map(|j| binomial(j, l - j) * elementary_symmetric(parts, j as usize)).sum())
}

/// `σ_j(x_1−1, x_2+1, x_3, …) − σ_j(x_1, …, x_r)`, evaluated through the
/// closed form `(x_1 − x_2 − 1)·σ_{j−2}(x_3, …, x_r)`.
pub fn sigma_shift_delta(parts: &[usize], j: usize) -> Result<BigInt, FaceVectorError> {
    if parts.len() < 2 {
        return Err(FaceVectorError::TooFewParts);
    }
    if j < 2 {
        return Ok(BigInt::zero());
    }
    let lead = BigInt::from(parts[0]) - BigInt::from(parts[1]) - 1;
    Ok(lead * elementary_symmetric(&parts[2..], j - 2))
}

/// The value of `e_{r+1}` forced by `h_{r+1} = h_{r−1}` in dimension
/// `d − 1 = 2r − 1`, from `(e_0, …, e_r)`.
pub fn middle_dehn_sommerville_count(lower: &[BigInt], r: usize) -> Result<BigInt, FaceVectorError> {
    if lower.len() != r + 1 {
        return Err(FaceVectorError::BadLength { expected: r + 1, got: lower.len() });
    }
    let d = 2 * r as i64;
    let r = r as i64;
    let h_coeff = |i: i64, j: i64| {
        let b = binomial(d - j, i - j);
        if (i - j) % 2 == 0 {
            b
        } else {
            -b
        }
    };
    let h_below: BigInt = (0..r).map(|j| h_coeff(r - 1, j) * &lower[j as usize]).sum();
    let rest: BigInt = (0..=r).map(|j| h_coeff(r + 1, j) * &lower[j as usize]).sum();
    Ok(h_below - rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{j_graph, j_graph_partitioned, turan, turan_partitioned};
    use crate::graph::clique_vector;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(p: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(p))
    }

    /// Independent oracle: expand `Σ f_{i−1} x^i (1−x)^{d−i}` as a polynomial.
    fn h_by_expansion(f: &[i64], d: usize) -> Vec<i64> {
        let mut h = vec![0i64; d + 1];
        for (i, &fi) in f.iter().enumerate() {
            // (1 - x)^{d-i} shifted by x^i
            let mut poly = vec![1i64];
            for _ in 0..d - i {
                let mut next = vec![0i64; poly.len() + 1];
                for (k, &c) in poly.iter().enumerate() {
                    next[k] += c;
                    next[k + 1] -= c;
                }
                poly = next;
            }
            for (k, &c) in poly.iter().enumerate() {
                h[i + k] += fi * c;
            }
        }
        h
    }

    #[test]
    fn f_to_h_examples() {
        assert_eq!(h_by_expansion(&[1, 4, 6, 4], 3), vec![1, 1, 1, 1]);
        assert_eq!(f_to_h(&big(&[1, 4, 6, 4]), 3).unwrap(), big(&[1, 1, 1, 1]));
        assert_eq!(h_by_expansion(&[1, 8, 24, 32, 16], 4), vec![1, 4, 6, 4, 1]);
        assert_eq!(f_to_h(&big(&[1, 8, 24, 32, 16]), 4).unwrap(), big(&[1, 4, 6, 4, 1]));
        assert_eq!(h_by_expansion(&[1, 4, 4], 2), vec![1, 2, 1]);
        assert_eq!(f_to_h(&big(&[1, 4, 4]), 2).unwrap(), big(&[1, 2, 1]));
        for n in 4..10 {
            assert_eq!(f_to_h(&big(&[1, n, n]), 2).unwrap(), big(&[1, n - 2, 1]));
        }
    }

    #[test]
    fn f_to_h_errors() {
        assert_eq!(f_to_h(&big(&[1, 4, 6]), 3), Err(FaceVectorError::BadLength { expected: 4, got: 3 }));
        assert_eq!(f_to_h(&big(&[2, 4, 6, 4]), 3), Err(FaceVectorError::LeadingNotOne));
    }

    #[test]
    fn h_to_f_examples() {
        assert_eq!(h_to_f(&big(&[1, 1, 1, 1]), 3).unwrap(), big(&[1, 4, 6, 4]));
        assert_eq!(h_to_f(&big(&[1, 4, 6, 4, 1]), 4).unwrap(), big(&[1, 8, 24, 32, 16]));
        for d in 1..8usize {
            let mut h = vec![BigInt::zero(); d + 1];
            h[0] = BigInt::one();
            let want: Vec<BigInt> = (0..=d as i64).map(|i| binomial(d as i64, i)).collect();
            assert_eq!(h_to_f(&h, d).unwrap(), want);
        }
    }

    #[test]
    fn dehn_sommerville_examples() {
        assert!(dehn_sommerville_holds(&big(&[1, 4, 6, 4, 1])));
        assert!(dehn_sommerville_holds(&big(&[1, 1, 1, 1])));
        assert!(!dehn_sommerville_holds(&big(&[1, 2, 3, 5])));
    }

    /// Independent oracle: expand `Σ γ_i x^i (1+x)^{d−2i}` and compare.
    fn expand_gamma(gamma: &[i64], d: usize) -> Vec<i64> {
        let mut h = vec![0i64; d + 1];
        for (i, &g) in gamma.iter().enumerate() {
            let mut poly = vec![1i64];
            for _ in 0..d - 2 * i {
                let mut next = vec![0i64; poly.len() + 1];
                for (k, &c) in poly.iter().enumerate() {
                    next[k] += c;
                    next[k + 1] += c;
                }
                poly = next;
            }
            for (k, &c) in poly.iter().enumerate() {
                h[i + k] += g * c;
            }
        }
        h
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(expand_gamma(&[1, 0, 0], 4), vec![1, 4, 6, 4, 1]);
        assert_eq!(h_to_gamma(&big(&[1, 4, 6, 4, 1])).unwrap(), big(&[1, 0, 0]));
        assert_eq!(expand_gamma(&[1, 4, 4], 4), vec![1, 8, 18, 8, 1]);
        assert_eq!(h_to_gamma(&big(&[1, 8, 18, 8, 1])).unwrap(), big(&[1, 4, 4]));
        assert_eq!(h_to_gamma(&big(&[1, 2, 3, 4])), Err(FaceVectorError::NotPalindromic));
        // J_2(12) really has this h-vector, and γ_2 = e_2(T_2(4)).
        let fv = FaceVectorSet::from_clique_vector(&clique_vector(&j_graph(12, 2).unwrap(), None));
        assert_eq!(fv.h, big(&[1, 8, 18, 8, 1]));
        assert_eq!(fv.gamma.unwrap()[2], BigInt::from(turan(4, 2).edge_count()));
    }

    #[test]
    fn g_examples() {
        assert_eq!(h_to_g(&big(&[1, 4, 6, 4, 1])), big(&[1, 3, 2]));
        assert_eq!(h_to_g(&big(&[1, 1, 1, 1])), big(&[1, 0]));
        assert_eq!(h_to_g(&big(&[1, 8, 18, 8, 1])), big(&[1, 7, 10]));
    }

    #[test]
    fn clique_function_examples() {
        let e2 = CliqueFunction::clique_count(2);
        let c5 = clique_vector(&crate::constructions::cycle(5), None);
        assert_eq!(e2.eval(&c5), rat(5));
        assert_eq!(e2.eval(&clique_vector(&j_graph(8, 2).unwrap(), None)), rat(24));
        let f = CliqueFunction::new(vec![rat(2), rat(-1), rat(3)]).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.eval(&clique_vector(&turan(4, 2), None)), rat(7));
        assert_eq!(CliqueFunction::new(vec![rat(0), rat(1)]), Err(FaceVectorError::NonPositiveLeading));
        assert_eq!(CliqueFunction::new(vec![rat(-1), rat(1)]), Err(FaceVectorError::NonPositiveLeading));
        // A face function f_1 - f_0 is the clique function e_2 - e_1.
        let face = CliqueFunction::from_face_function(vec![rat(1), rat(-1), rat(0)]).unwrap();
        assert_eq!(face.eval(&c5), rat(0));
        assert_eq!(face.eval_faces(&big(&[1, 5, 5])), rat(0));
    }

    #[test]
    fn multipartite_examples() {
        assert_eq!(multipartite_clique_count(&[4, 4], &[4, 4], 2).unwrap(), BigInt::from(24));
        assert_eq!(multipartite_clique_count(&[4, 4], &[4, 4], 4).unwrap(), BigInt::from(16));
        assert_eq!(multipartite_clique_count(&[7], &[7], 1).unwrap(), BigInt::from(7));
        assert_eq!(
            multipartite_clique_count(&[4, 4], &[4, 3], 2),
            Err(FaceVectorError::OutOfClass { part: 1, size: 4, intra: 3 })
        );
    }

    #[test]
    fn multipartite_formula_matches_enumeration() {
        for r in 1..=4 {
            for n in (4 * r..=24).step_by(3) {
                let j = j_graph_partitioned(n, r).unwrap();
                let sizes = j.sizes().0;
                let cv = clique_vector(&j.graph, None);
                for l in 0..=2 * r {
                    let got = multipartite_clique_count(&sizes, &sizes, l).unwrap();
                    assert_eq!(got, BigInt::from(cv.get(l)), "n={n} r={r} l={l}");
                }
            }
        }
    }

    #[test]
    fn sigma_shift_examples() {
        assert_eq!(sigma_shift_delta(&[5, 3], 2).unwrap(), BigInt::from(1));
        assert_eq!(sigma_shift_delta(&[4, 4], 2).unwrap(), BigInt::from(-1));
        assert_eq!(sigma_shift_delta(&[9, 2, 5], 0).unwrap(), BigInt::zero());
        assert_eq!(sigma_shift_delta(&[9], 2), Err(FaceVectorError::TooFewParts));
    }

    #[test]
    fn sigma_shift_matches_direct_evaluation() {
        fn all_vectors(r: usize, max: usize) -> Vec<Vec<usize>> {
            let mut out = vec![vec![]];
            for _ in 0..r {
                out = out.into_iter().flat_map(|v| (1..=max).map(move |x| [v.clone(), vec![x]].concat())).collect();
            }
            out
        }
        for r in 2..=5 {
            let max = if r == 5 { 5 } else { 8 };
            for parts in all_vectors(r, max) {
                let mut shifted: Vec<BigInt> = parts.iter().map(|&x| BigInt::from(x)).collect();
                shifted[0] -= 1;
                shifted[1] += 1;
                let orig: Vec<BigInt> = parts.iter().map(|&x| BigInt::from(x)).collect();
                for j in 0..=r {
                    let direct = elementary_symmetric_big(&shifted, j) - elementary_symmetric_big(&orig, j);
                    assert_eq!(sigma_shift_delta(&parts, j).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn symmetric_coefficients_reproduce_f() {
        let f = CliqueFunction::new(vec![rat(3), rat(-2), rat(5), rat(1)]).unwrap();
        let cprime = f.symmetric_coefficients();
        for (n, r) in [(12, 3), (17, 3), (9, 2)] {
            let j = j_graph_partitioned(n, r).unwrap();
            let sizes = j.sizes().0;
            let via_sigma: BigRational = cprime
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(elementary_symmetric(&sizes, i)))
                .sum();
            assert_eq!(via_sigma, f.eval(&clique_vector(&j.graph, None)));
        }
        let t = turan_partitioned(10, 3);
        assert_eq!(clique_vector(&t.graph, None).get(3), num_bigint::BigUint::from(36u32));
    }

    #[test]
    fn middle_dehn_sommerville() {
        for r in 1..=3 {
            for n in 4 * r..4 * r + 6 {
                let cv = clique_vector(&j_graph(n, r).unwrap(), None);
                let lower: Vec<BigInt> = (0..=r).map(|i| BigInt::from(cv.get(i))).collect();
                assert_eq!(middle_dehn_sommerville_count(&lower, r).unwrap(), BigInt::from(cv.get(r + 1)));
            }
        }
    }

    proptest! {
        #[test]
        fn f_h_round_trip(d in 1usize..=10, tail in proptest::collection::vec(-1000i64..1000, 10)) {
            let mut f = vec![BigInt::one()];
            f.extend(tail.iter().take(d).map(|&x| BigInt::from(x)));
            let h = f_to_h(&f, d).unwrap();
            prop_assert_eq!(h_to_f(&h, d).unwrap(), f);
        }

        #[test]
        fn gamma_round_trip(d in 1usize..=10, tail in proptest::collection::vec(-50i64..50, 5)) {
            let mut gamma = vec![BigInt::one()];
            gamma.extend(tail.iter().take(d / 2).map(|&x| BigInt::from(x)));
            let h = gamma_to_h(&gamma, d);
            prop_assert!(dehn_sommerville_holds(&h));
            prop_assert_eq!(h_to_gamma(&h).unwrap(), gamma);
        }
    }
}
