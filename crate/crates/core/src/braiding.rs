//! Braidings on multiplicity-free tensor squares, assembled from the Drinfeld
//! eigenvalue formula and the classical flip signs of the components.

use crate::cartan::{ParabolicDatum, Weight};
use crate::error::{QpvError, Result};
use crate::linalg::Matrix;
use crate::repmod::{pminus_module, tensor, Ambient, IsotypicComponent, WeightModule};
use crate::scalar::{Poly, QContext, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Sign of the exponent convention: the eigenvalue on the `ν` component is
/// `±q^{e_ν/2}` with `e_ν = (λ,λ+2ρ)+(μ,μ+2ρ)−(ν,ν+2ρ)`, i.e. the `q^{−t₀}` form.
pub const T0_SIGN: i8 = -1;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The invariant form restricted to the span of the acting simple roots:
/// `(λ, μ)_S = Σ_{i,j∈S} λ_i (D_S a_S⁻¹)_{ij} μ_j`.
#[derive(Clone, Debug)]
pub struct ActingForm {
    idx: Vec<usize>,
    gram: Matrix<BigRational>,
}

impl ActingForm {
    pub fn new(ambient: &Ambient) -> Self {
        let idx = ambient.acting_indices();
        let a: Matrix<BigRational> = Matrix::from_rows(
            idx.iter().map(|&i| idx.iter().map(|&j| r(ambient.cartan[i][j])).collect()).collect(),
        );
        let gram = if idx.is_empty() {
            Matrix::zeros(0, 0)
        } else {
            let inv = a.inverse().expect("Cartan submatrix invertible");
            let mut g = Matrix::zeros(idx.len(), idx.len());
            for (p, &i) in idx.iter().enumerate() {
                for q in 0..idx.len() {
                    g.set(p, q, r(ambient.d[i]) * inv.get(p, q));
                }
            }
            g
        };
        ActingForm { idx, gram }
    }

    pub fn inner(&self, lambda: &[i64], mu: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (p, &i) in self.idx.iter().enumerate() {
            for (q, &j) in self.idx.iter().enumerate() {
                acc += self.gram.get(p, q) * r(lambda[i] * mu[j]);
            }
        }
        acc
    }

    /// `(λ, λ + 2ρ_S)`.
    pub fn casimir(&self, lambda: &[i64]) -> BigRational {
        let shifted: Weight =
            (0..lambda.len()).map(|i| lambda[i] + if self.idx.contains(&i) { 2 } else { 0 }).collect();
        self.inner(lambda, &shifted)
    }
}

/// `(λ,λ+2ρ)+(μ,μ+2ρ)−(ν,ν+2ρ)` for the form of the acting indices.
pub fn drinfeld_square_exponent(form: &ActingForm, lambda: &[i64], mu: &[i64], nu: &[i64]) -> BigRational {
    form.casimir(lambda) + form.casimir(mu) - form.casimir(nu)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub nu: Weight,
    /// Exponent `e_ν/2` of `q`.
    #[serde(serialize_with = "ser_rat")]
    pub exponent: BigRational,
    pub eigenvalue: Scalar,
    pub sign: i8,
    /// Dimension of the component.
    pub mult: usize,
}

fn ser_rat<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::cartan::fmt_rat(x))
}

#[derive(Clone, Debug)]
pub struct Braiding {
    pub matrix: Matrix<Scalar>,
    pub spectrum: Vec<SpectrumEntry>,
    pub ctx: QContext,
    pub components: Vec<IsotypicComponent>,
}

impl Braiding {
    /// Distinct eigenvalues with total multiplicities, in spectrum order.
    pub fn eigenvalues(&self) -> Vec<(Scalar, usize)> {
        let mut out: Vec<(Scalar, usize)> = Vec::new();
        for s in &self.spectrum {
            match out.iter_mut().find(|(e, _)| *e == s.eigenvalue) {
                Some(x) => x.1 += s.mult,
                None => out.push((s.eigenvalue.clone(), s.mult)),
            }
        }
        out
    }

    /// Eigenvalues whose classical sign is negative.
    pub fn negative_eigenvalues(&self) -> Vec<(Scalar, usize)> {
        let mut out: Vec<(Scalar, usize)> = Vec::new();
        for s in self.spectrum.iter().filter(|s| s.sign < 0) {
            match out.iter_mut().find(|(e, _)| *e == s.eigenvalue) {
                Some(x) => x.1 += s.mult,
                None => out.push((s.eigenvalue.clone(), s.mult)),
            }
        }
        out
    }

    /// Eigenspace basis for a given eigenvalue.
    pub fn eigenspace(&self, eigenvalue: &Scalar) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for (s, c) in self.spectrum.iter().zip(&self.components) {
            if &s.eigenvalue == eigenvalue {
                out.extend(c.basis.iter().cloned());
            }
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Braiding {
        let mut b = self.clone();
        b.matrix = b.matrix.scale(c);
        for s in &mut b.spectrum {
            s.eigenvalue = &s.eigenvalue * c;
        }
        b
    }

    pub fn spectrum_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .spectrum
            .iter()
            .map(|s| serde_json::json!({
                "nu": s.nu,
                "eigenvalue": s.eigenvalue.to_string(),
                "sign": s.sign,
                "mult": s.mult,
            }))
            .collect::<Vec<_>>())
    }
}

/// Multiplicity of `v = 1` as a zero (negative for a pole).
pub fn order_at_one(x: &Scalar) -> i64 {
    fn ord(p: &Poly) -> i64 {
        let lin = Poly::from_i64s(&[-1, 1]);
        let mut k = 0;
        let mut cur = p.clone();
        while !cur.is_zero() {
            match cur.div_exact(&lin) {
                Some(qt) => {
                    cur = qt;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }
    ord(x.numerator()) - ord(x.denominator())
}

/// Rescales a nonzero vector so that it is regular at `v = 1` and not zero
/// there, then evaluates it at `v = 1`.
pub fn classical_limit(v: &[Scalar]) -> Vec<BigRational> {
    let pivot = v
        .iter()
        .filter(|x| !x.is_zero())
        .min_by_key(|x| order_at_one(x))
        .expect("nonzero vector")
        .clone();
    let one = BigRational::one();
    v.iter()
        .map(|x| {
            if x.is_zero() {
                BigRational::zero()
            } else {
                (x / &pivot).evaluate(&one).expect("regular at v = 1 after rescaling")
            }
        })
        .collect()
}

/// Matrix of the flip `a⊗b ↦ b⊗a` on `V⊗V`.
pub fn flip_matrix(n: usize) -> Matrix<Scalar> {
    let mut p = Matrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            p.set(b * n + a, a * n + b, Scalar::one());
        }
    }
    p
}

fn flip_vec<T: Clone>(v: &[T], n: usize) -> Vec<T> {
    let mut out = v.to_vec();
    for a in 0..n {
        for b in 0..n {
            out[b * n + a] = v[a * n + b].clone();
        }
    }
    out
}

/// `Ř = Σ_ν sign_ν q^{e_ν/2} P_ν` on `V⊗V`, for a simple module `V` whose
/// tensor square is multiplicity free. The root order `D` is raised as needed
/// so every `q^{e_ν/2}` is representable; the returned braiding records it.
pub fn self_braiding(v: &WeightModule) -> Result<Braiding> {
    let tops = v.highest_weight_vectors();
    if tops.len() != 1 {
        return Err(QpvError::StructureViolation("self-braiding needs a simple module".into()));
    }
    let lambda = tops[0].0.clone();
    let form = ActingForm::new(&v.ambient);
    let vv = tensor(v, v)?;
    let comps = vv.isotypic_decompose();
    if comps.iter().any(|c| c.multiplicity != 1) {
        return Err(QpvError::NotMultiplicityFree);
    }
    let exps: Vec<BigRational> = comps
        .iter()
        .map(|c| drinfeld_square_exponent(&form, &lambda, &lambda, &c.highest_weight) / r(2))
        .collect();
    let d0 = v.ctx.d_root as i64;
    let mut need = d0;
    for e in &exps {
        let den: i64 = (e * r(d0)).denom().try_into().expect("small denominator");
        need = num_integer::lcm(need, d0 * den);
    }
    let m = (need / d0) as u32;
    let ctx = QContext::new(need as u32);
    let n = v.dim();
    let mut matrix = Matrix::zeros(n * n, n * n);
    let mut spectrum = Vec::new();
    let mut components = Vec::new();
    for (c, e) in comps.into_iter().zip(exps) {
        let hw = &c.basis[0];
        let cl = classical_limit(hw);
        let fl = flip_vec(&cl, n);
        let sign: i8 = if fl == cl {
            1
        } else if fl.iter().zip(&cl).all(|(a, b)| a == &-b) {
            -1
        } else {
            return Err(QpvError::SpectralMismatch("highest weight vector is not a flip eigenvector at q = 1".into()));
        };
        let mag = ctx.q_pow(&e)?;
        let eigenvalue = if sign < 0 { -mag } else { mag };
        let proj = c.projection.map(|s| s.inflate(m));
        matrix = matrix.add(&proj.scale(&eigenvalue));
        spectrum.push(SpectrumEntry { nu: c.highest_weight.clone(), exponent: e, eigenvalue, sign, mult: c.basis.len() });
        components.push(IsotypicComponent {
            highest_weight: c.highest_weight,
            multiplicity: c.multiplicity,
            basis: c.basis.iter().map(|b| b.iter().map(|s| s.inflate(m)).collect()).collect(),
            projection: proj,
        });
    }
    Ok(Braiding { matrix, spectrum, ctx, components })
}

/// `q_{l0}^{(λ,ϖ_{l0})/(ϖ_{l0},ϖ_{l0})}`.
pub fn mixed_multiplier_exponent(lambda: &[i64], par: &ParabolicDatum) -> BigRational {
    let k = par.l0_index();
    let w = par.base.fundamental_weight(k);
    r(par.base.d[k]) * par.base.inner(lambda, &w) / par.base.inner(&w, &w)
}

pub fn mixed_multiplier(lambda: &[i64], par: &ParabolicDatum, ctx: QContext) -> Result<Scalar> {
    Ok(ctx.q_pow(&mixed_multiplier_exponent(lambda, par))?)
}

/// Smallest even multiple of `s` making every exponent used for this
/// parabolic case representable.
pub fn root_order(par: &ParabolicDatum) -> u32 {
    let s = par.base.s();
    let mut d = if s % 2 == 0 { s } else { 2 * s };
    let neg_alpha: Weight = par.base.simple_root(par.l0_index()).iter().map(|x| -x).collect();
    let mixed = mixed_multiplier_exponent(&neg_alpha, par);
    let h0 = r(4) / &par.h0_norm;
    for e in [mixed, h0] {
        let den: i64 = (e * r(d)).denom().try_into().expect("small");
        d *= den;
    }
    d as u32
}

/// The first-order calculus braiding: the mixed multiplier for `λ = −α_{l0}`
/// times the Levi self-braiding of the generator module.
pub fn fodc_braiding(par: &ParabolicDatum) -> Result<(WeightModule, Braiding)> {
    let v = pminus_module(par, QContext::new(root_order(par)))?;
    let b = self_braiding(&v)?;
    let v = v.inflate(b.ctx.d_root / v.ctx.d_root);
    let neg_alpha: Weight = par.base.simple_root(par.l0_index()).iter().map(|x| -x).collect();
    let c = mixed_multiplier(&neg_alpha, par, b.ctx)?;
    Ok((v, b.scaled(&c)))
}

/// Levi self-braiding of the generator module, with its module.
pub fn levi_braiding(par: &ParabolicDatum) -> Result<(WeightModule, Braiding)> {
    let v = pminus_module(par, QContext::new(root_order(par)))?;
    let b = self_braiding(&v)?;
    let v = v.inflate(b.ctx.d_root / v.ctx.d_root);
    Ok((v, b))
}

/// `Ř` commutes with the coproduct action of every acting generator.
pub fn check_naturality(v: &WeightModule, b: &Braiding) -> Result<bool> {
    let v = v.inflate(b.ctx.d_root / v.ctx.d_root);
    let vv = tensor(&v, &v)?;
    for i in v.ambient.acting_indices() {
        for op in [&vv.e[i], &vv.f[i]] {
            if op.mul(&b.matrix) != b.matrix.mul(op) {
                return Ok(false);
            }
        }
    }
    for i in 0..v.ambient.rank() {
        let k = vv.k_matrix(i, 1);
        if k.mul(&b.matrix) != b.matrix.mul(&k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// At `v = 1` the braiding is the flip.
pub fn check_classical_flip(b: &Braiding, n: usize) -> bool {
    let one = BigRational::one();
    let flip = flip_matrix(n);
    for a in 0..n * n {
        for c in 0..n * n {
            match b.matrix.get(a, c).evaluate(&one) {
                Ok(x) => {
                    let want = if flip.get(a, c).is_zero() { BigRational::zero() } else { one.clone() };
                    if x != want {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
    }
    true
}

/// `Ř²` acts on each component by `q^{e_ν}`.
pub fn check_square_spectrum(b: &Braiding) -> bool {
    let sq = b.matrix.mul(&b.matrix);
    b.spectrum.iter().zip(&b.components).all(|(s, c)| {
        let want = b.ctx.q_pow(&(&s.exponent * r(2))).expect("representable");
        c.basis.iter().all(|x| sq.apply(x) == x.iter().map(|y| y * &want).collect::<Vec<_>>())
    })
}

/// Braid relation `(Ř⊗1)(1⊗Ř)(Ř⊗1) = (1⊗Ř)(Ř⊗1)(1⊗Ř)` on `V⊗V⊗V`.
pub fn check_braid_relation(b: &Braiding, n: usize) -> bool {
    let id: Matrix<Scalar> = Matrix::identity(n);
    let r12 = b.matrix.kron(&id);
    let r23 = id.kron(&b.matrix);
    r12.mul(&r23).mul(&r12) == r23.mul(&r12).mul(&r23)
}

/// Sign of every entry of a matrix at `v = x`, bracketed in `(lo, hi)` where
/// `lo < x < hi` and the bracket is known to avoid zeros of every numerator and
/// denominator except where the entry vanishes identically. Returns `None` if
/// some entry's sign is not certified in the bracket.
pub fn signs_in_bracket(m: &Matrix<Scalar>, lo: &BigRational, hi: &BigRational) -> Option<Matrix<BigRational>> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for a in 0..m.rows() {
        for c in 0..m.cols() {
            let s = m.get(a, c).sign_in_bracket(lo, hi)?;
            out.set(a, c, r(s as i64));
        }
    }
    Some(out)
}

/// Sign pattern of a matrix at `q = x` with `v = q^{1/D}`, certified exactly:
/// a rational bracket around `x^{1/D}` is refined until every nonzero entry has
/// a constant sign on it.
pub fn certified_signs(m: &Matrix<Scalar>, q: &BigRational, d_root: u32) -> Matrix<BigRational> {
    let (mut lo, mut hi) = root_bracket(q, d_root);
    for _ in 0..200 {
        if let Some(s) = signs_in_bracket(m, &lo, &hi) {
            return s;
        }
        let mid = (&lo + &hi) / r(2);
        let p = num_traits::pow(mid.clone(), d_root as usize);
        if &p < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    panic!("sign certification did not converge");
}

/// Rational bracket `lo < q^{1/D} < hi` (or an exact value repeated).
pub fn root_bracket(q: &BigRational, d_root: u32) -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one().max(q.clone());
    for _ in 0..64 {
        let mid = (&lo + &hi) / r(2);
        let p = num_traits::pow(mid.clone(), d_root as usize);
        if &p == q {
            return (&mid - r(1) / r(1 << 40), &mid + r(1) / r(1 << 40));
        }
        if &p < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Triangularity with positive diagonal of a sign pattern; `upper` selects
/// the side allowed to be nonzero.
pub fn is_triangular_positive(signs: &Matrix<BigRational>, upper: bool) -> bool {
    for a in 0..signs.rows() {
        for c in 0..signs.cols() {
            let s = signs.get(a, c);
            if a == c {
                if !s.is_positive() {
                    return false;
                }
            } else if (upper && a > c || !upper && a < c) && !s.is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_datum, parabolic, Series};
    use crate::repmod::simple_module;
    use crate::scalar::rat;

    #[test]
    fn exponent_examples() {
        let d = build_root_datum(Series::A, 1).unwrap();
        let f = ActingForm::new(&Ambient::full(&d));
        assert_eq!(drinfeld_square_exponent(&f, &[0], &[0], &[0]), rat(0, 1));
        assert_eq!(drinfeld_square_exponent(&f, &[1], &[1], &[2]), rat(-1, 1));
        assert_eq!(drinfeld_square_exponent(&f, &[1], &[1], &[0]), rat(3, 1));
    }

    #[test]
    fn sl2_braiding() {
        let d = build_root_datum(Series::A, 1).unwrap();
        let v = simple_module(&Ambient::full(&d), &[1], QContext::new(2)).unwrap();
        let b = self_braiding(&v).unwrap();
        let signs: Vec<(Weight, i8)> = b.spectrum.iter().map(|s| (s.nu.clone(), s.sign)).collect();
        assert_eq!(signs, vec![(vec![2], 1), (vec![0], -1)]);
        assert_eq!(b.spectrum[0].exponent, rat(-1, 2));
        assert_eq!(b.spectrum[1].exponent, rat(3, 2));
        assert!(check_classical_flip(&b, 2));
        assert!(check_square_spectrum(&b));
        assert!(check_naturality(&v, &b).unwrap());
        assert!(check_braid_relation(&b, 2));
    }

    #[test]
    fn a3_levi_braiding_has_one_negative_eigenvalue() {
        let d = build_root_datum(Series::A, 3).unwrap();
        let p = parabolic(&d, 2).unwrap();
        let (_, b) = levi_braiding(&p).unwrap();
        let neg = b.negative_eigenvalues();
        assert_eq!(neg.len(), 1);
        assert_eq!(neg[0].0, -b.ctx.q_int_pow(1));
        assert_eq!(neg[0].1, 6);
    }

    #[test]
    fn multiplier_examples() {
        let d = build_root_datum(Series::A, 3).unwrap();
        let p = parabolic(&d, 2).unwrap();
        let c = QContext::new(4);
        assert!(mixed_multiplier(&[0, 0, 0], &p, c).unwrap().is_one());
        assert_eq!(mixed_multiplier(&[0, 1, 0], &p, c).unwrap(), c.q_int_pow(1));
        assert_eq!(mixed_multiplier(&[1, -2, 1], &p, c).unwrap(), c.q_int_pow(-1));
    }
}
