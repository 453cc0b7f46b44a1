//! The quadratic algebra on the `𝔭⁻` generators: relation space, rewrite
//! rules, confluence, normal forms and Hilbert dimensions.

use crate::braiding::{levi_braiding, Braiding};
use crate::cartan::{ParabolicDatum, Weight};
use crate::error::{QpvError, Result};
use crate::linalg::Matrix;
use crate::repmod::{tensor, WeightModule};
use crate::rewrite::{Lin, OverlapCertificate, RewriteSystem, Rule, Word};
use crate::scalar::{Field, QContext, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct QuadraticPresentation {
    pub par: ParabolicDatum,
    pub ctx: QContext,
    /// Weights of `z_1 … z_n`.
    pub generators: Vec<Weight>,
    /// Basis of `ℒ ⊂ V⊗V`, coordinates indexed by `i·n + j` for `z_i ⊗ z_j`.
    pub relation_space: Vec<Vec<Scalar>>,
    /// Letters `0..n` are `z_1..z_n`.
    pub system: RewriteSystem<Scalar>,
    pub module: WeightModule,
    pub braiding: Braiding,
}

/// `ℒ`: the negative-eigenvalue eigenspace of the Levi braiding, which must be
/// a single eigenvalue `−q^{4/(H₀,H₀)}` of multiplicity `n(n−1)/2`.
pub fn relation_space(par: &ParabolicDatum, b: &Braiding, n: usize) -> Result<Vec<Vec<Scalar>>> {
    let neg = b.negative_eigenvalues();
    let want_mult = n * (n - 1) / 2;
    if want_mult == 0 {
        return if neg.is_empty() {
            Ok(Vec::new())
        } else {
            Err(QpvError::SpectralMismatch("negative eigenvalue on a one-dimensional square".into()))
        };
    }
    if neg.len() != 1 {
        return Err(QpvError::SpectralMismatch(format!("{} negative eigenvalues", neg.len())));
    }
    let expected = -b.ctx.q_pow(&(BigRational::from_integer(BigInt::from(4)) / &par.h0_norm))?;
    if neg[0].0 != expected || neg[0].1 != want_mult {
        return Err(QpvError::SpectralMismatch(format!(
            "negative eigenvalue {} with multiplicity {}, expected {} with {}",
            neg[0].0, neg[0].1, expected, want_mult
        )));
    }
    Ok(b.eigenspace(&neg[0].0))
}

/// Solves a relation space for a prescribed set of leading monomials. Returns,
/// for each leading index, the combination of the remaining indices it equals.
pub fn solve_for_leading<F: Field>(
    relations: &[Vec<F>],
    leading: &[usize],
    dim: usize,
) -> Option<Vec<(usize, Vec<(usize, F)>)>> {
    if relations.len() != leading.len() {
        return None;
    }
    // columns: leading first, then the rest in increasing order
    let rest: Vec<usize> = (0..dim).filter(|c| !leading.contains(c)).collect();
    let cols: Vec<usize> = leading.iter().chain(rest.iter()).copied().collect();
    let m = Matrix::from_rows(relations.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect());
    let (rr, pivots) = m.rref();
    if pivots != (0..leading.len()).collect::<Vec<_>>() {
        return None;
    }
    Some(
        leading
            .iter()
            .enumerate()
            .map(|(row, &lead)| {
                let terms = rest
                    .iter()
                    .enumerate()
                    .filter_map(|(t, &c)| {
                        let x = rr.get(row, leading.len() + t);
                        (!x.is_zero()).then(|| (c, x.neg()))
                    })
                    .collect();
                (lead, terms)
            })
            .collect(),
    )
}

/// Inversion monomials `z_i z_j`, `i > j`, in increasing word order.
pub fn inversions(n: usize) -> Vec<usize> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in 0..i {
            v.push(i * n + j);
        }
    }
    v
}

pub fn presentation(par: &ParabolicDatum) -> Result<QuadraticPresentation> {
    let (module, braiding) = levi_braiding(par)?;
    let n = module.dim();
    let rel = relation_space(par, &braiding, n)?;
    let lead = inversions(n);
    let solved = solve_for_leading(&rel, &lead, n * n).ok_or(QpvError::LeadingTermDegenerate)?;
    let rules = solved
        .into_iter()
        .map(|(l, terms)| Rule {
            lhs: ((l / n) as u8, (l % n) as u8),
            rhs: terms.into_iter().map(|(c, x)| (((c / n) as u8, (c % n) as u8), x)).collect(),
        })
        .collect();
    let system = RewriteSystem::new(n, rules).map_err(|_| QpvError::LeadingTermDegenerate)?;
    Ok(QuadraticPresentation {
        par: par.clone(),
        ctx: braiding.ctx,
        generators: module.weights.clone(),
        relation_space: rel,
        system,
        module,
        braiding,
    })
}

impl QuadraticPresentation {
    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn confluence_check(&self) -> OverlapCertificate {
        self.system.confluence_check()
    }

    pub fn normal_form(&self, word: &[usize]) -> Lin<Scalar> {
        let w: Word = word.iter().map(|&i| i as u8).collect();
        self.system.normal_form(&w)
    }

    /// Number of irreducible monomials in each degree `0..=maxdeg`.
    pub fn hilbert_dims(&self, maxdeg: usize) -> Vec<usize> {
        let alphabet: Vec<u8> = (0..self.n() as u8).collect();
        (0..=maxdeg).map(|d| self.system.irreducible_words(&alphabet, d).len()).collect()
    }

    /// Every rule at `v = 1` is the plain transposition `z_i z_j → z_j z_i`.
    pub fn classical_limit_is_commutative(&self) -> bool {
        let one = <BigRational as One>::one();
        self.system.rules().iter().all(|r| {
            let terms: Vec<((u8, u8), BigRational)> = r
                .rhs
                .iter()
                .filter_map(|(m, c)| {
                    let x = c.evaluate(&one).ok()?;
                    (x != BigRational::from_integer(0.into())).then_some((*m, x))
                })
                .collect();
            r.rhs.iter().all(|(_, c)| c.evaluate(&one).is_ok()) && terms == vec![((r.lhs.1, r.lhs.0), one.clone())]
        })
    }

    /// `ℒ` is stable under the Levi generators acting on `V⊗V`.
    pub fn relation_space_is_levi_stable(&self) -> Result<bool> {
        let vv = tensor(&self.module, &self.module)?;
        let n2 = self.n() * self.n();
        if self.relation_space.is_empty() {
            return Ok(true);
        }
        let base = Matrix::from_cols(n2, &self.relation_space);
        let r = base.rank();
        for i in self.module.ambient.acting_indices() {
            for op in [&vv.e[i], &vv.f[i]] {
                let mut cols = self.relation_space.clone();
                for x in &self.relation_space {
                    cols.push(op.apply(x));
                }
                if Matrix::from_cols(n2, &cols).rank() != r {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Matrix of a Levi generator on the degree-`k` normal monomials.
    pub fn levi_action_matrix(&self, i: usize, upper: bool, k: usize) -> Result<(Vec<Word>, Matrix<Scalar>)> {
        let alphabet: Vec<u8> = (0..self.n() as u8).collect();
        let basis = self.system.irreducible_words(&alphabet, k);
        let m = coproduct_action(&self.module, &self.system, &basis, i, upper);
        Ok((basis, m))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rules: Vec<serde_json::Value> = self
            .system
            .rules()
            .iter()
            .map(|r| {
                serde_json::json!({
                    "lhs": [r.lhs.0 as usize + 1, r.lhs.1 as usize + 1],
                    "rhs": r.rhs.iter().map(|((k, m), c)| serde_json::json!({
                        "mono": [*k as usize + 1, *m as usize + 1],
                        "coeff": c.to_string(),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "d_root": self.ctx.d_root,
            "generators": self.generators,
            "rules": rules,
        })
    }
}

/// Matrix of `E_i` (or `F_i`) on the span of the normal words `basis`, whose
/// letters index the basis of `v`, through the iterated coproduct followed by
/// normal form. `Δ(E) = Σ_p K⊗…⊗K⊗E⊗1⊗…` and `Δ(F) = Σ_p 1⊗…⊗F⊗K⁻¹⊗…⊗K⁻¹`.
pub fn coproduct_action(
    v: &WeightModule,
    system: &RewriteSystem<Scalar>,
    basis: &[Word],
    i: usize,
    upper: bool,
) -> Matrix<Scalar> {
    let pos: BTreeMap<&Word, usize> = basis.iter().enumerate().map(|(p, w)| (w, p)).collect();
    let op = if upper { &v.e[i] } else { &v.f[i] };
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (col, w) in basis.iter().enumerate() {
        let mut image: Lin<Scalar> = BTreeMap::new();
        for p in 0..w.len() {
            let mut factor = Scalar::one();
            let range: Vec<usize> = if upper { (0..p).collect() } else { (p + 1..w.len()).collect() };
            for t in range {
                let wt = &v.weights[w[t] as usize];
                factor = &factor * &v.k_eigen(i, &wt.iter().map(|x| if upper { *x } else { -x }).collect::<Vec<_>>());
            }
            let src = w[p] as usize;
            for tgt in 0..v.dim() {
                let c = op.get(tgt, src);
                if c.is_zero() {
                    continue;
                }
                let mut nw = w.clone();
                nw[p] = tgt as u8;
                crate::rewrite::lin_add(&mut image, nw, &(&factor * c));
            }
        }
        for (nw, c) in system.normal_form_lin(&image) {
            m.set(*pos.get(&nw).expect("action preserves degree"), col, c);
        }
    }
    m
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_datum, parabolic, Series};

    fn pres(s: Series, l: usize, n0: usize) -> QuadraticPresentation {
        presentation(&parabolic(&build_root_datum(s, l).unwrap(), n0).unwrap()).unwrap()
    }

    #[test]
    fn quantum_plane_from_a2() {
        let p = pres(Series::A, 2, 1);
        let rules = p.system.rules();
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].lhs, (1, 0));
        assert_eq!(rules[0].rhs.len(), 1);
        assert_eq!(rules[0].rhs[0].0, (0, 1));
        assert!(rules[0].rhs[0].1.is_monomial());
        assert!(p.classical_limit_is_commutative());
        assert_eq!(p.hilbert_dims(4), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn quantum_matrices_from_a3() {
        let p = pres(Series::A, 3, 2);
        let rules = p.system.rules();
        assert_eq!(rules.len(), 6);
        assert_eq!(rules.iter().filter(|r| r.rhs.len() == 2).count(), 1);
        assert!(p.confluence_check().is_confluent());
        assert_eq!(p.hilbert_dims(4), vec![1, 4, 10, 20, 35]);
        assert!(p.relation_space_is_levi_stable().unwrap());
        let nf = p.normal_form(&[3, 2, 1, 0]);
        assert!(nf.keys().all(|w| p.system.is_normal(w)));
    }

    #[test]
    fn a1_has_no_relations() {
        let p = pres(Series::A, 1, 1);
        assert!(p.relation_space.is_empty());
        assert_eq!(p.hilbert_dims(3), vec![1, 1, 1, 1]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
    }
}
