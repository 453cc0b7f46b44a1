//! The universal differential calculus over the quadratic algebra: the three
//! relation families, bigraded normal bases, the differential and exactness.
//!
//! Letters `0..n` are `dz_1..dz_n` and `n..2n` are `z_1..z_n`, so that normal
//! words have the shape `dz_{i₁}⋯dz_{i_j} z^a` with `i₁ < ⋯ < i_j`.

use crate::braiding::{fodc_braiding, Braiding};
use crate::cartan::{ParabolicDatum, Weight};
use crate::error::{QpvError, Result};
use crate::linalg::{bareiss_rank, Matrix};
use crate::qalgebra::{binomial, presentation, solve_for_leading, QuadraticPresentation};
use crate::rewrite::{lin_add, Lin, OverlapCertificate, RewriteSystem, Rule, Word};
use crate::scalar::{Field, QContext, Scalar, ScalarError};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct Calculus<F: Field> {
    pub n: usize,
    pub weights: Vec<Weight>,
    pub system: RewriteSystem<F>,
}

#[derive(Clone, Debug)]
pub struct CalculusPresentation {
    pub quadratic: QuadraticPresentation,
    pub fodc: Braiding,
    pub ctx: QContext,
    pub calculus: Calculus<Scalar>,
    pub zd_rules: Vec<Rule<Scalar>>,
    pub dd_rules: Vec<Rule<Scalar>>,
}

pub fn build_calculus(par: &ParabolicDatum) -> Result<CalculusPresentation> {
    let quadratic = presentation(par)?;
    let (_, fodc) = fodc_braiding(par)?;
    if fodc.ctx != quadratic.ctx {
        return Err(QpvError::StructureViolation("root orders of the two braidings differ".into()));
    }
    let n = quadratic.n();
    let m = &fodc.matrix;
    let nu = n as u8;
    let mut rules: Vec<Rule<Scalar>> = Vec::new();
    for r in quadratic.system.rules() {
        rules.push(Rule {
            lhs: (r.lhs.0 + nu, r.lhs.1 + nu),
            rhs: r.rhs.iter().map(|((k, l), c)| ((k + nu, l + nu), c.clone())).collect(),
        });
    }
    // z_i dz_j → Σ M[(k,m),(i,j)] dz_k z_m
    let mut zd_rules = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut rhs = Vec::new();
            for k in 0..n {
                for l in 0..n {
                    let c = m.get(k * n + l, i * n + j);
                    if !c.is_zero() {
                        rhs.push(((k as u8, l as u8 + nu), c.clone()));
                    }
                }
            }
            zd_rules.push(Rule { lhs: (i as u8 + nu, j as u8), rhs });
        }
    }
    // dz-relations: the image of I + M, solved for dz_i dz_j with i ≥ j
    let ipm = Matrix::identity(n * n).add(m);
    let cols = ipm.independent_columns();
    let relations: Vec<Vec<Scalar>> = cols.iter().map(|&c| ipm.col(c)).collect();
    let mut leading = Vec::new();
    for i in 0..n {
        for j in 0..=i {
            leading.push(i * n + j);
        }
    }
    let solved = solve_for_leading(&relations, &leading, n * n).ok_or(QpvError::LeadingTermDegenerate)?;
    let dd_rules: Vec<Rule<Scalar>> = solved
        .into_iter()
        .map(|(l, terms)| Rule {
            lhs: ((l / n) as u8, (l % n) as u8),
            rhs: terms.into_iter().map(|(c, x)| (((c / n) as u8, (c % n) as u8), x)).collect(),
        })
        .collect();
    rules.extend(zd_rules.iter().cloned());
    rules.extend(dd_rules.iter().cloned());
    let system = RewriteSystem::new(2 * n, rules).map_err(|_| QpvError::LeadingTermDegenerate)?;
    let calculus = Calculus { n, weights: quadratic.generators.clone(), system };
    Ok(CalculusPresentation { ctx: quadratic.ctx, quadratic, fodc, calculus, zd_rules, dd_rules })
}

impl CalculusPresentation {
    pub fn n(&self) -> usize {
        self.calculus.n
    }

    /// Specializes `v` to a rational value.
    pub fn specialize(&self, v: &BigRational) -> std::result::Result<Calculus<BigRational>, ScalarError> {
        Ok(Calculus {
            n: self.calculus.n,
            weights: self.calculus.weights.clone(),
            system: self.calculus.system.try_map(|c| c.evaluate(v))?,
        })
    }

    /// Every family degenerates at `v = 1`: `z` commute, `z·dz = dz·z`, `dz` anticommute.
    pub fn classical_limit_ok(&self) -> bool {
        let one: BigRational = Field::one();
        let Ok(cl) = self.specialize(&one) else {
            return false;
        };
        let n = self.n() as u8;
        cl.system.rules().iter().all(|r| {
            let (a, b) = r.lhs;
            let expected: Vec<((u8, u8), BigRational)> = if a >= n && b >= n {
                vec![((b, a), one.clone())]
            } else if a >= n {
                vec![((b, a), one.clone())]
            } else if a == b {
                vec![]
            } else {
                vec![((b, a), Field::from_i64(-1))]
            };
            let got: Vec<((u8, u8), BigRational)> = r.rhs.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
            got == expected
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let fmt = |rules: &[Rule<Scalar>]| {
            rules
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "lhs": [r.lhs.0 as usize, r.lhs.1 as usize],
                        "rhs": r.rhs.iter().map(|((k, m), c)| serde_json::json!({
                            "mono": [*k as usize, *m as usize],
                            "coeff": c.to_string(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>()
        };
        serde_json::json!({
            "d_root": self.ctx.d_root,
            "letters": "0..n are dz_1..dz_n, n..2n are z_1..z_n",
            "zd": fmt(&self.zd_rules),
            "dd": fmt(&self.dd_rules),
        })
    }
}

/// Normal basis of the bidegree `(j, k)` component.
#[derive(Clone, Debug)]
pub struct FormComponent {
    pub j: usize,
    pub k: usize,
    pub basis: Vec<Word>,
}

impl<F: Field> Calculus<F> {
    pub fn is_dz(&self, letter: u8) -> bool {
        (letter as usize) < self.n
    }

    pub fn word_weight(&self, w: &[u8]) -> Weight {
        let r = self.weights.first().map_or(0, |x| x.len());
        let mut acc = vec![0; r];
        for &a in w {
            let g = &self.weights[a as usize % self.n];
            for (x, y) in acc.iter_mut().zip(g) {
                *x += y;
            }
        }
        acc
    }

    pub fn confluence_check(&self) -> OverlapCertificate {
        self.system.confluence_check()
    }

    /// `dz_I z^a` with `|I| = j`, `|a| = k`, read off the irreducible words.
    pub fn component_basis(&self, j: usize, k: usize) -> FormComponent {
        let n = self.n as u8;
        let dz: Vec<u8> = (0..n).collect();
        let z: Vec<u8> = (n..2 * n).collect();
        let forms = self.system.irreducible_words(&dz, j);
        let monos = self.system.irreducible_words(&z, k);
        let mut basis = Vec::with_capacity(forms.len() * monos.len());
        for f in &forms {
            for m in &monos {
                let mut w = f.clone();
                w.extend_from_slice(m);
                basis.push(w);
            }
        }
        debug_assert!(basis.iter().all(|w| self.system.is_normal(w)));
        FormComponent { j, k, basis }
    }

    /// Dimension of the span of `dz`-words of length `j`, by normal forms.
    pub fn lambda_const_dim(&self, j: usize) -> usize {
        let dz: Vec<u8> = (0..self.n as u8).collect();
        let normal = self.system.irreducible_words(&dz, j);
        if self.n.pow(j as u32) <= 5000 {
            // every word reduces into the span of the irreducible ones
            let mut all: Vec<Word> = vec![vec![]];
            for _ in 0..j {
                all = all.iter().flat_map(|w| dz.iter().map(move |&a| [w.clone(), vec![a]].concat())).collect();
            }
            let mut seen = std::collections::BTreeSet::new();
            for w in &all {
                for (u, _) in self.system.normal_form(w) {
                    seen.insert(u);
                }
            }
            return seen.len();
        }
        normal.len()
    }

    /// Rank of the products `z^a · dz_I` (left) and `dz_I · z^a` (right) in the
    /// normal basis of bidegree `(j, k)`; freeness means both equal the dimension.
    pub fn freeness_ranks(&self, j: usize, k: usize) -> (usize, usize, usize) {
        let comp = self.component_basis(j, k);
        let pos: BTreeMap<&Word, usize> = comp.basis.iter().enumerate().map(|(p, w)| (w, p)).collect();
        let n = self.n as u8;
        let forms = self.system.irreducible_words(&(0..n).collect::<Vec<_>>(), j);
        let monos = self.system.irreducible_words(&(n..2 * n).collect::<Vec<_>>(), k);
        let mut left: Vec<Vec<F>> = Vec::new();
        let mut right: Vec<Vec<F>> = Vec::new();
        for f in &forms {
            for m in &monos {
                for (out, word) in [(&mut left, [m.clone(), f.clone()].concat()), (&mut right, [f.clone(), m.clone()].concat())] {
                    let mut col = vec![F::zero(); comp.basis.len()];
                    for (u, c) in self.system.normal_form(&word) {
                        col[pos[&u]] = c;
                    }
                    out.push(col);
                }
            }
        }
        let rank = |cols: &Vec<Vec<F>>| {
            if cols.is_empty() {
                0
            } else {
                Matrix::from_cols(comp.basis.len(), cols).rank()
            }
        };
        (comp.basis.len(), rank(&left), rank(&right))
    }

    /// Graded Leibniz rule on a single word, with `d z_i = dz_i`, `d dz_i = 0`.
    pub fn d_word(&self, w: &[u8]) -> Lin<F> {
        let mut out = BTreeMap::new();
        let mut dz_before = 0;
        for p in 0..w.len() {
            if self.is_dz(w[p]) {
                dz_before += 1;
                continue;
            }
            let mut v = w.to_vec();
            v[p] = w[p] - self.n as u8;
            let sign = if dz_before % 2 == 0 { F::one() } else { F::one().neg() };
            lin_add(&mut out, v, &sign);
        }
        out
    }

    /// `d` on a combination, followed by normal form.
    pub fn d(&self, x: &Lin<F>) -> Lin<F> {
        let mut raw = BTreeMap::new();
        for (w, c) in x {
            for (u, s) in self.d_word(w) {
                lin_add(&mut raw, u, &s.mul(c));
            }
        }
        self.system.normal_form_lin(&raw)
    }

    pub fn product(&self, a: &Lin<F>, b: &Lin<F>) -> Lin<F> {
        let mut raw = BTreeMap::new();
        for (u, x) in a {
            for (w, y) in b {
                lin_add(&mut raw, [u.clone(), w.clone()].concat(), &x.mul(y));
            }
        }
        self.system.normal_form_lin(&raw)
    }

    /// Matrix of `d : (j, k) → (j+1, k−1)` restricted to one weight, in the
    /// normal bases (columns are sources).
    pub fn differential_block(&self, src: &[Word], tgt: &[Word]) -> Matrix<F> {
        let pos: BTreeMap<&Word, usize> = tgt.iter().enumerate().map(|(p, w)| (w, p)).collect();
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (c, w) in src.iter().enumerate() {
            let img = self.d(&BTreeMap::from([(w.clone(), F::one())]));
            for (u, x) in img {
                let row = *pos.get(&u).expect("d preserves weight and bidegree");
                m.set(row, c, x);
            }
        }
        m
    }

    /// Full matrix of `d` from bidegree `(j, k)`.
    pub fn differential(&self, j: usize, k: usize) -> DifferentialMatrix<F> {
        let src = self.component_basis(j, k).basis;
        let tgt = if k == 0 { Vec::new() } else { self.component_basis(j + 1, k - 1).basis };
        let matrix = self.differential_block(&src, &tgt);
        DifferentialMatrix { source: (j, k), target: (j + 1, k.saturating_sub(1)), src_basis: src, tgt_basis: tgt, matrix }
    }

    fn blocks(&self, words: Vec<Word>) -> BTreeMap<Weight, Vec<Word>> {
        let mut out: BTreeMap<Weight, Vec<Word>> = BTreeMap::new();
        for w in words {
            out.entry(self.word_weight(&w)).or_default().push(w);
        }
        out
    }

    /// The complex `⊕_j Λ^j[t−j]` of total degree `t`, split by weight. Returns
    /// the dimensions, the ranks of `d_j` and whether `d² = 0`.
    pub fn total_degree_complex(&self, t: usize, rank: &dyn Fn(&Matrix<F>) -> usize) -> ComplexData {
        let top = t.min(self.n);
        let comps: Vec<BTreeMap<Weight, Vec<Word>>> =
            (0..=top).map(|j| self.blocks(self.component_basis(j, t - j).basis)).collect();
        let dims: Vec<usize> = comps.iter().map(|c| c.values().map(|v| v.len()).sum()).collect();
        let mut ranks = vec![0usize; top + 1];
        let mut d_squared_zero = true;
        let weights: std::collections::BTreeSet<Weight> = comps.iter().flat_map(|c| c.keys().cloned()).collect();
        for wt in weights {
            let mut prev: Option<Matrix<F>> = None;
            for j in 0..=top {
                let empty = Vec::new();
                let src = comps[j].get(&wt).unwrap_or(&empty);
                let tgt = if j < top { comps[j + 1].get(&wt).unwrap_or(&empty) } else { &empty };
                let m = self.differential_block(src, tgt);
                if !src.is_empty() && !tgt.is_empty() {
                    ranks[j] += rank(&m);
                }
                if let Some(p) = &prev {
                    if p.rows() > 0 && m.rows() > 0 && !m.mul(p).is_zero() {
                        d_squared_zero = false;
                    }
                }
                prev = Some(m);
            }
        }
        ComplexData { t, dims, ranks, d_squared_zero }
    }

    /// Dimension of the degree-3 `dz` component computed as `T³` modulo
    /// `R⊗V + V⊗R`, by linear algebra on the relation space `R`.
    pub fn cubic_form_dim_direct(&self) -> usize {
        let n = self.n;
        let mut rel2: Vec<Vec<(usize, F)>> = Vec::new();
        for r in self.system.rules() {
            if self.is_dz(r.lhs.0) && self.is_dz(r.lhs.1) {
                let mut v = vec![(r.lhs.0 as usize * n + r.lhs.1 as usize, F::one())];
                for ((k, m), c) in &r.rhs {
                    v.push((*k as usize * n + *m as usize, c.neg()));
                }
                rel2.push(v);
            }
        }
        // group cubic words by weight
        let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for idx in 0..n * n * n {
            let w = [(idx / (n * n)) as u8, ((idx / n) % n) as u8, (idx % n) as u8];
            blocks.entry(self.word_weight(&w)).or_default().push(idx);
        }
        let mut gens: Vec<Vec<(usize, F)>> = Vec::new();
        for r in &rel2 {
            for a in 0..n {
                gens.push(r.iter().map(|(p, c)| (p * n + a, c.clone())).collect());
                gens.push(r.iter().map(|(p, c)| (a * n * n + p, c.clone())).collect());
            }
        }
        let mut total = 0;
        for idxs in blocks.values() {
            let pos: BTreeMap<usize, usize> = idxs.iter().enumerate().map(|(p, &i)| (i, p)).collect();
            let rows: Vec<Vec<F>> = gens
                .iter()
                .filter(|g| pos.contains_key(&g[0].0))
                .map(|g| {
                    let mut row = vec![F::zero(); idxs.len()];
                    for (p, c) in g {
                        row[pos[p]] = row[pos[p]].add(c);
                    }
                    row
                })
                .collect();
            let r = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
            total += idxs.len() - r;
        }
        total
    }
}

impl<F: Field> Calculus<F> {
    /// Rank of `{z^a · dz_i · z^b : |a| + |b| = k}` in bidegree `(1, k)`; the
    /// first-order forms are spanned by `f₁·df₂·f₃` iff it equals the dimension.
    pub fn fodc_spanning_rank(&self, k: usize) -> (usize, usize) {
        let comp = self.component_basis(1, k);
        let pos: BTreeMap<&Word, usize> = comp.basis.iter().enumerate().map(|(p, w)| (w, p)).collect();
        let n = self.n as u8;
        let z: Vec<u8> = (n..2 * n).collect();
        let mut cols: Vec<Vec<F>> = Vec::new();
        for left in 0..=k {
            let a = self.system.irreducible_words(&z, left);
            let b = self.system.irreducible_words(&z, k - left);
            for u in &a {
                for i in 0..n {
                    for w in &b {
                        let mut col = vec![F::zero(); comp.basis.len()];
                        let word = [u.clone(), vec![i], w.clone()].concat();
                        for (x, c) in self.system.normal_form(&word) {
                            col[pos[&x]] = c;
                        }
                        cols.push(col);
                    }
                }
            }
        }
        (comp.basis.len(), Matrix::from_cols(comp.basis.len(), &cols).rank())
    }

    fn random_word(&self, rng: &mut ChaCha8Rng, forms: usize, len: usize) -> Word {
        let n = self.n as u8;
        let mut w: Word = (0..len).map(|_| n + rng.gen_range(0..n)).collect();
        for slot in 0..forms.min(len) {
            w[slot] -= n;
        }
        // scatter the dz letters
        for p in (1..w.len()).rev() {
            let q = rng.gen_range(0..=p);
            w.swap(p, q);
        }
        w
    }

    /// First-order Leibniz on random polynomial pairs and graded Leibniz on
    /// random form pairs. Returns the number of failing trials.
    pub fn leibniz_failures(&self, trials: usize, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = 0;
        for t in 0..trials {
            let graded = t % 2 == 1;
            let fa = if graded { rng.gen_range(0..=1) } else { 0 };
            let fb = if graded { rng.gen_range(0..=1) } else { 0 };
            let len_a = rng.gen_range(1..=3usize).max(fa);
            let a = self.system.normal_form(&self.random_word(&mut rng, fa, len_a));
            let b = self.system.normal_form(&self.random_word(&mut rng, fb, 2.max(fb)));
            let lhs = self.d(&self.product(&a, &b));
            let sign = if fa % 2 == 0 { F::one() } else { F::one().neg() };
            let mut rhs = self.product(&self.d(&a), &b);
            for (w, c) in self.product(&a, &self.d(&b)) {
                lin_add(&mut rhs, w, &c.mul(&sign));
            }
            if lhs != rhs {
                failures += 1;
            }
        }
        failures
    }
}

#[derive(Clone, Debug)]
pub struct DifferentialMatrix<F: Field> {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub src_basis: Vec<Word>,
    pub tgt_basis: Vec<Word>,
    pub matrix: Matrix<F>,
}

impl<F: Field> DifferentialMatrix<F> {
    /// Sparse `(row, col, value)` triplets.
    pub fn triplets(&self) -> Vec<(usize, usize, String)> {
        let mut out = Vec::new();
        for r in 0..self.matrix.rows() {
            for c in 0..self.matrix.cols() {
                let x = self.matrix.get(r, c);
                if !x.is_zero() {
                    out.push((r, c, x.to_string()));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexData {
    pub t: usize,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub d_squared_zero: bool,
}

impl ComplexData {
    /// `rank(d_{j−1}) + rank(d_j) = dim C_j` for every `j`; returns the first failing `j`.
    pub fn first_defect(&self) -> Option<usize> {
        (0..self.dims.len()).find(|&j| {
            let before = if j == 0 { 0 } else { self.ranks[j - 1] };
            before + self.ranks[j] != self.dims[j]
        })
    }

    pub fn is_exact(&self) -> bool {
        self.d_squared_zero && self.first_defect().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub case: String,
    pub t: usize,
    pub mode: String,
    /// Bidegrees `(j, t−j)`.
    pub bidegrees: Vec<(usize, usize)>,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    /// Sample values of `v` (sampled mode).
    pub samples: Vec<String>,
    pub status: String,
}

/// Rationals in `(0, 1)` drawn from a seeded generator.
pub fn sample_points(count: usize, seed: u64) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let den: i64 = rng.gen_range(7..=97);
            let num: i64 = rng.gen_range(1..den);
            BigRational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

/// Checks `d² = 0` and `Ker d = Im d` in total degree `t ≥ 1`. Sampled mode
/// specializes `v` at rational points; since ranks can only drop under
/// specialization and `d² = 0` bounds the generic rank sum by the dimension,
/// an exact sequence at a sample certifies the generic one.
pub fn exactness_check(cp: &CalculusPresentation, t: usize, mode: &Mode) -> Result<ExactnessReport> {
    let bidegrees: Vec<(usize, usize)> = (0..=t.min(cp.n())).map(|j| (j, t - j)).collect();
    let case = cp.quadratic.par.label();
    match mode {
        Mode::Exact => {
            let data = cp.calculus.total_degree_complex(t, &|m: &Matrix<Scalar>| bareiss_rank(m));
            let status = if data.is_exact() { "pass" } else { "fail" };
            let report = ExactnessReport {
                case,
                t,
                mode: "exact".into(),
                bidegrees: bidegrees.clone(),
                dims: data.dims.clone(),
                ranks: data.ranks.clone(),
                samples: vec![],
                status: status.into(),
            };
            if let Some(j) = data.first_defect() {
                return Err(QpvError::ExactnessFailure { j: bidegrees[j].0, k: bidegrees[j].1 });
            }
            if !data.d_squared_zero {
                return Err(QpvError::StructureViolation(format!("d² ≠ 0 in total degree {t}")));
            }
            Ok(report)
        }
        Mode::Sampled { samples, seed } => {
            let mut results: Vec<ComplexData> = Vec::new();
            let mut used = Vec::new();
            let mut attempt = 0u64;
            while results.len() < *samples {
                let v = sample_points(1, seed.wrapping_add(attempt)).remove(0);
                attempt += 1;
                let Ok(calc) = cp.specialize(&v) else {
                    continue;
                };
                let data = calc.total_degree_complex(t, &|m: &Matrix<BigRational>| m.rank());
                used.push(v.to_string());
                results.push(data);
            }
            let agree = results.windows(2).all(|w| w[0] == w[1]);
            let first = results[0].clone();
            if !agree {
                return Err(QpvError::StructureViolation(format!("samples disagree in total degree {t}")));
            }
            if let Some(j) = first.first_defect() {
                return Err(QpvError::ExactnessFailure { j: bidegrees[j].0, k: bidegrees[j].1 });
            }
            if !first.d_squared_zero {
                return Err(QpvError::StructureViolation(format!("d² ≠ 0 in total degree {t}")));
            }
            Ok(ExactnessReport {
                case,
                t,
                mode: "sampled".into(),
                bidegrees,
                dims: first.dims,
                ranks: first.ranks,
                samples: used,
                status: "pass".into(),
            })
        }
    }
}

/// Expected bigraded dimension `C(n, j)·C(k+n−1, n−1)`.
pub fn expected_dim(n: usize, j: usize, k: usize) -> usize {
    binomial(n, j) * binomial(k + n - 1, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_datum, parabolic, Series};

    fn calc(s: Series, l: usize, n0: usize) -> CalculusPresentation {
        build_calculus(&parabolic(&build_root_datum(s, l).unwrap(), n0).unwrap()).unwrap()
    }

    #[test]
    fn rank_one_calculus() {
        let c = calc(Series::A, 1, 1);
        assert_eq!(c.zd_rules.len(), 1);
        assert_eq!(c.dd_rules.len(), 1);
        assert!(c.dd_rules[0].rhs.is_empty());
        // d(z²) = (1 + c) dz·z
        let z2 = BTreeMap::from([(vec![1u8, 1], Scalar::one())]);
        let dz2 = c.calculus.d(&z2);
        assert_eq!(dz2.len(), 1);
        assert!(dz2.contains_key(&vec![0u8, 1]));
    }

    #[test]
    fn quantum_plane_calculus() {
        let c = calc(Series::A, 2, 1);
        assert_eq!(c.zd_rules.len(), 4);
        assert_eq!(c.dd_rules.len(), 3);
        assert!(c.classical_limit_ok());
        assert!(c.calculus.confluence_check().is_confluent());
        let r = exactness_check(&c, 2, &Mode::Exact).unwrap();
        assert_eq!(r.dims, vec![3, 4, 1]);
        assert_eq!(r.ranks, vec![3, 1, 0]);
    }

    #[test]
    fn a3_bigraded_dimensions() {
        let c = calc(Series::A, 3, 2);
        for j in 0..=5 {
            assert_eq!(c.calculus.lambda_const_dim(j), binomial(4, j));
        }
        assert_eq!(c.calculus.component_basis(2, 1).basis.len(), 24);
        let (dim, left, right) = c.calculus.freeness_ranks(2, 1);
        assert_eq!((left, right), (dim, dim));
        assert_eq!(c.calculus.cubic_form_dim_direct(), 4);
        assert_eq!(c.calculus.fodc_spanning_rank(2), (40, 40));
        assert_eq!(c.calculus.leibniz_failures(20, 5), 0);
    }

    #[test]
    fn sample_points_are_reproducible() {
        assert_eq!(sample_points(3, 11), sample_points(3, 11));
        assert!(sample_points(5, 3).iter().all(|v| *v > BigRational::from_integer(0.into()) && *v < BigRational::from_integer(1.into())));
    }
}
