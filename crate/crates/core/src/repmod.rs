//! Finite-dimensional weight modules over `U_q𝔤` and over Levi subalgebras:
//! truncated Verma modules with their contravariant form, simple modules,
//! duals, tensor products, highest weight vectors and isotypic components.

use crate::cartan::{ParabolicDatum, RootDatum, Weight};
use crate::error::{QpvError, Result};
use crate::linalg::Matrix;
use crate::scalar::{QContext, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{BTreeMap, HashMap};

/// Structural data shared by every module over the same root datum.
#[derive(Clone, Debug, PartialEq)]
pub struct Ambient {
    pub cartan: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    /// Indices whose `E_i`, `F_i` act.
    pub acting: Vec<bool>,
}

impl Ambient {
    pub fn full(datum: &RootDatum) -> Self {
        Ambient { cartan: datum.cartan.clone(), d: datum.d.clone(), acting: vec![true; datum.rank] }
    }

    pub fn levi(par: &ParabolicDatum) -> Self {
        let mut a = Ambient::full(&par.base);
        a.acting[par.l0_index()] = false;
        a
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn acting_indices(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.acting[i]).collect()
    }

    pub fn simple_root(&self, j: usize) -> Weight {
        (0..self.rank()).map(|i| self.cartan[i][j]).collect()
    }
}

fn sub_w(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_w(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightModule {
    pub ambient: Ambient,
    pub ctx: QContext,
    pub weights: Vec<Weight>,
    pub e: Vec<Matrix<Scalar>>,
    pub f: Vec<Matrix<Scalar>>,
    /// `r` with `H₀ v = 2 r v`, when a parabolic grading is attached.
    pub h0_grades: Option<Vec<BigRational>>,
}

impl WeightModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn trivial(ambient: Ambient, ctx: QContext) -> Self {
        let r = ambient.rank();
        WeightModule {
            ambient,
            ctx,
            weights: vec![vec![0; r]],
            e: vec![Matrix::zeros(1, 1); r],
            f: vec![Matrix::zeros(1, 1); r],
            h0_grades: None,
        }
    }

    /// `K_i` eigenvalue `q_i^{μ_i}` on a weight.
    pub fn k_eigen(&self, i: usize, mu: &[i64]) -> Scalar {
        self.ctx.q_int_pow(self.ambient.d[i] * mu[i])
    }

    pub fn k_matrix(&self, i: usize, power: i64) -> Matrix<Scalar> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (b, w) in self.weights.iter().enumerate() {
            m.set(b, b, self.ctx.q_int_pow(power * self.ambient.d[i] * w[i]));
        }
        m
    }

    /// Weight multiset.
    pub fn character(&self) -> BTreeMap<Weight, usize> {
        let mut ch = BTreeMap::new();
        for w in &self.weights {
            *ch.entry(w.clone()).or_insert(0) += 1;
        }
        ch
    }

    /// Basis indices whose H₀-grade equals `r`.
    pub fn h0_component(&self, r: &BigRational) -> Vec<usize> {
        match &self.h0_grades {
            Some(g) => (0..self.dim()).filter(|&b| &g[b] == r).collect(),
            None => Vec::new(),
        }
    }

    pub fn attach_grading(&mut self, par: &ParabolicDatum) {
        self.h0_grades = Some(self.weights.iter().map(|w| par.h0_grade(w)).collect());
    }

    /// Rewrites every scalar for the finer root order `D·m`.
    pub fn inflate(&self, m: u32) -> WeightModule {
        if m == 1 {
            return self.clone();
        }
        let up = |x: &Matrix<Scalar>| x.map(|s| s.inflate(m));
        WeightModule {
            ambient: self.ambient.clone(),
            ctx: QContext::new(self.ctx.d_root * m),
            weights: self.weights.clone(),
            e: self.e.iter().map(up).collect(),
            f: self.f.iter().map(up).collect(),
            h0_grades: self.h0_grades.clone(),
        }
    }

    /// Reorders the basis: new vector `k` is old vector `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> WeightModule {
        let n = self.dim();
        let conj = |m: &Matrix<Scalar>| {
            let mut out = Matrix::zeros(n, n);
            for (a, &pa) in perm.iter().enumerate() {
                for (b, &pb) in perm.iter().enumerate() {
                    out.set(a, b, m.get(pa, pb).clone());
                }
            }
            out
        };
        WeightModule {
            ambient: self.ambient.clone(),
            ctx: self.ctx,
            weights: perm.iter().map(|&p| self.weights[p].clone()).collect(),
            e: self.e.iter().map(conj).collect(),
            f: self.f.iter().map(conj).collect(),
            h0_grades: self.h0_grades.as_ref().map(|g| perm.iter().map(|&p| g[p].clone()).collect()),
        }
    }

    /// Basis indices grouped by weight.
    pub fn weight_blocks(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (b, w) in self.weights.iter().enumerate() {
            blocks.entry(w.clone()).or_default().push(b);
        }
        blocks
    }

    /// `E_i` raises weights by `α_i` and `F_i` lowers them.
    pub fn check_weight_blocks(&self) -> bool {
        for i in 0..self.ambient.rank() {
            let alpha = self.ambient.simple_root(i);
            for a in 0..self.dim() {
                for b in 0..self.dim() {
                    if !self.e[i].get(a, b).is_zero() && self.weights[a] != add_w(&self.weights[b], &alpha) {
                        return false;
                    }
                    if !self.f[i].get(a, b).is_zero() && self.weights[a] != sub_w(&self.weights[b], &alpha) {
                        return false;
                    }
                }
            }
            if !self.ambient.acting[i] && (!self.e[i].is_zero() || !self.f[i].is_zero()) {
                return false;
            }
        }
        true
    }

    /// `[E_i, F_j] = δ_ij (K_i − K_i⁻¹)/(q_i − q_i⁻¹)` for acting indices;
    /// returns the failing pair if any.
    pub fn check_commutators(&self) -> std::result::Result<(), (usize, usize)> {
        let act = self.ambient.acting_indices();
        for &i in &act {
            for &j in &act {
                let lhs = self.e[i].mul(&self.f[j]).sub(&self.f[j].mul(&self.e[i]));
                let mut rhs = Matrix::zeros(self.dim(), self.dim());
                if i == j {
                    for (b, w) in self.weights.iter().enumerate() {
                        rhs.set(b, b, self.ctx.q_number(w[i], self.ambient.d[i]));
                    }
                }
                if lhs != rhs {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    /// Quantum Serre relations for `E` and `F` on every acting pair `i ≠ j`.
    pub fn check_serre(&self) -> std::result::Result<(), (usize, usize)> {
        let act = self.ambient.acting_indices();
        let n = self.dim();
        for &i in &act {
            for &j in &act {
                if i == j {
                    continue;
                }
                let m = 1 - self.ambient.cartan[i][j];
                for ops in [&self.e, &self.f] {
                    let mut total: Matrix<Scalar> = Matrix::zeros(n, n);
                    for r in 0..=m {
                        let coeff = self.ctx.q_binomial(m, r, self.ambient.d[i]);
                        let coeff = if r % 2 == 1 { -coeff } else { coeff };
                        let mut term = Matrix::identity(n);
                        for _ in 0..(m - r) {
                            term = term.mul(&ops[i]);
                        }
                        term = term.mul(&ops[j]);
                        for _ in 0..r {
                            term = term.mul(&ops[i]);
                        }
                        total = total.add(&term.scale(&coeff));
                    }
                    if !total.is_zero() {
                        return Err((i, j));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis of `∩_i Ker E_i` over acting indices, organized by weight.
    pub fn highest_weight_vectors(&self) -> Vec<(Weight, Vec<Scalar>)> {
        let act = self.ambient.acting_indices();
        let mut out = Vec::new();
        for (w, block) in self.weight_blocks() {
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for &i in &act {
                for r in 0..self.dim() {
                    let row: Vec<Scalar> = block.iter().map(|&b| self.e[i].get(r, b).clone()).collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let kernel = if rows.is_empty() {
                (0..block.len())
                    .map(|k| (0..block.len()).map(|t| if t == k { Scalar::one() } else { Scalar::zero() }).collect())
                    .collect()
            } else {
                Matrix::from_rows(rows).nullspace()
            };
            for kv in kernel {
                let mut full = vec![Scalar::zero(); self.dim()];
                for (t, &b) in block.iter().enumerate() {
                    full[b] = kv[t].clone();
                }
                out.push((w.clone(), full));
            }
        }
        // highest weights first: sort by decreasing sum of coordinates, then weight
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// Span of `F`-words applied to `v`, as a list of basis vectors.
    pub fn f_closure(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let act = self.ambient.acting_indices();
        let mut span: Vec<Vec<Scalar>> = Vec::new();
        let mut frontier = vec![v.to_vec()];
        let mut rank = 0;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in frontier {
                let mut trial = span.clone();
                trial.push(x.clone());
                let r = Matrix::from_cols(self.dim(), &trial).rank();
                if r > rank {
                    rank = r;
                    span.push(x.clone());
                    for &i in &act {
                        let y = self.f[i].apply(&x);
                        if y.iter().any(|s| !s.is_zero()) {
                            next.push(y);
                        }
                    }
                }
            }
            frontier = next;
        }
        span
    }

    /// Isotypic components with their projections. Components with equal
    /// highest weight are merged into one block.
    pub fn isotypic_decompose(&self) -> Vec<IsotypicComponent> {
        let hwvs = self.highest_weight_vectors();
        let mut blocks: Vec<(Weight, Vec<Vec<Scalar>>, usize)> = Vec::new();
        for (w, v) in hwvs {
            let span = self.f_closure(&v);
            if let Some(b) = blocks.iter_mut().find(|b| b.0 == w) {
                b.1.extend(span);
                b.2 += 1;
            } else {
                blocks.push((w, span, 1));
            }
        }
        let all: Vec<Vec<Scalar>> = blocks.iter().flat_map(|b| b.1.iter().cloned()).collect();
        let n = self.dim();
        let c = Matrix::from_cols(n, &all);
        let cinv = c.inverse().expect("components span the module");
        let mut out = Vec::new();
        let mut offset = 0;
        for (w, span, mult) in blocks {
            let k = span.len();
            let mut sel = Matrix::zeros(n, n);
            for t in offset..offset + k {
                sel.set(t, t, Scalar::one());
            }
            let projection = c.mul(&sel).mul(&cinv);
            out.push(IsotypicComponent { highest_weight: w, multiplicity: mult, basis: span, projection });
            offset += k;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sparse = |m: &Matrix<Scalar>| {
            let mut entries = Vec::new();
            for a in 0..m.rows() {
                for b in 0..m.cols() {
                    let x = m.get(a, b);
                    if !x.is_zero() {
                        entries.push(serde_json::json!([a, b, x.to_string()]));
                    }
                }
            }
            entries
        };
        serde_json::json!({
            "d_root": self.ctx.d_root,
            "weights": self.weights,
            "acting": self.ambient.acting_indices().iter().map(|i| i + 1).collect::<Vec<_>>(),
            "E": self.e.iter().map(sparse).collect::<Vec<_>>(),
            "F": self.f.iter().map(sparse).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicComponent {
    pub highest_weight: Weight,
    pub multiplicity: usize,
    pub basis: Vec<Vec<Scalar>>,
    pub projection: Matrix<Scalar>,
}

/// Brings two modules to a common root order.
pub fn common_context(a: &WeightModule, b: &WeightModule) -> (WeightModule, WeightModule) {
    let (da, db) = (a.ctx.d_root, b.ctx.d_root);
    let l = num_integer::lcm(da, db);
    (a.inflate(l / da), b.inflate(l / db))
}

/// `V ⊗ W` with `Δ(E) = E⊗1 + K⊗E`, `Δ(F) = F⊗K⁻¹ + 1⊗F`, basis `(a, b) ↦ a·dim W + b`.
pub fn tensor(v: &WeightModule, w: &WeightModule) -> Result<WeightModule> {
    if v.ambient != w.ambient {
        return Err(QpvError::StructureViolation("tensor factors act through different index sets".into()));
    }
    let (v, w) = common_context(v, w);
    let r = v.ambient.rank();
    let iv: Matrix<Scalar> = Matrix::identity(v.dim());
    let iw: Matrix<Scalar> = Matrix::identity(w.dim());
    let mut e = Vec::with_capacity(r);
    let mut f = Vec::with_capacity(r);
    for i in 0..r {
        e.push(v.e[i].kron(&iw).add(&v.k_matrix(i, 1).kron(&w.e[i])));
        f.push(v.f[i].kron(&w.k_matrix(i, -1)).add(&iv.kron(&w.f[i])));
    }
    let mut weights = Vec::with_capacity(v.dim() * w.dim());
    let mut grades = Vec::new();
    for a in 0..v.dim() {
        for b in 0..w.dim() {
            weights.push(add_w(&v.weights[a], &w.weights[b]));
            if let (Some(ga), Some(gb)) = (&v.h0_grades, &w.h0_grades) {
                grades.push(&ga[a] + &gb[b]);
            }
        }
    }
    let h0_grades = (v.h0_grades.is_some() && w.h0_grades.is_some()).then_some(grades);
    Ok(WeightModule { ambient: v.ambient.clone(), ctx: v.ctx, weights, e, f, h0_grades })
}

/// Graded dual with `E* = (−K⁻¹E)ᵀ`, `F* = (−FK)ᵀ`.
pub fn dual_module(v: &WeightModule) -> WeightModule {
    let r = v.ambient.rank();
    let mut e = Vec::with_capacity(r);
    let mut f = Vec::with_capacity(r);
    let minus = Scalar::from_int(-1);
    for i in 0..r {
        e.push(v.k_matrix(i, -1).mul(&v.e[i]).scale(&minus).transpose());
        f.push(v.f[i].mul(&v.k_matrix(i, 1)).scale(&minus).transpose());
    }
    WeightModule {
        ambient: v.ambient.clone(),
        ctx: v.ctx,
        weights: v.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect(),
        e,
        f,
        h0_grades: v.h0_grades.as_ref().map(|g| g.iter().map(|x| -x).collect()),
    }
}

/// The simple module `L(λ)` (over the acting indices of `ambient`), built
/// level by level: a new candidate `F_i b` is kept iff its `E`-images are
/// independent of those of the candidates already kept. In a simple module a
/// vector below the top is zero iff all `E_j` kill it, so this is the quotient
/// of the Verma module by the radical of its contravariant form.
pub fn simple_module(ambient: &Ambient, lambda: &[i64], ctx: QContext) -> Result<WeightModule> {
    let act = ambient.acting_indices();
    if act.iter().any(|&i| lambda[i] < 0) {
        return Err(QpvError::NonDominantWeight(lambda.to_vec()));
    }
    let r = ambient.rank();
    let mut weights: Vec<Weight> = vec![lambda.to_vec()];
    // e_img[b][i]: sparse E_i b; f_img[b][i]: sparse F_i b
    let mut e_img: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); r]];
    let mut f_img: Vec<Vec<Vec<(usize, Scalar)>>> = Vec::new();
    let mut level: Vec<usize> = vec![0];
    let alphas: Vec<Weight> = (0..r).map(|i| ambient.simple_root(i)).collect();
    while !level.is_empty() {
        let mut groups: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        for &b in &level {
            for &i in &act {
                groups.entry(sub_w(&weights[b], &alphas[i])).or_default().push((b, i));
            }
        }
        for &b in &level {
            while f_img.len() <= b {
                f_img.push(vec![Vec::new(); r]);
            }
        }
        let mut next_level = Vec::new();
        // process higher weights first for a deterministic basis order
        for (wt, cands) in groups.into_iter().rev() {
            // E-images of each candidate, keyed by (j, target index)
            let mut images: Vec<BTreeMap<(usize, usize), Scalar>> = Vec::new();
            for &(b, i) in &cands {
                let mut img: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for &j in &act {
                    for (c, coef) in &e_img[b][j] {
                        for (t, fc) in &f_img[*c][i] {
                            let entry = img.entry((j, *t)).or_insert_with(Scalar::zero);
                            *entry = &*entry + &(coef * fc);
                        }
                    }
                    if i == j {
                        let qn = ctx.q_number(weights[b][i], ambient.d[i]);
                        let entry = img.entry((j, b)).or_insert_with(Scalar::zero);
                        *entry = &*entry + &qn;
                    }
                }
                img.retain(|_, s| !s.is_zero());
                images.push(img);
            }
            let keys: Vec<(usize, usize)> = {
                let mut k: Vec<_> = images.iter().flat_map(|m| m.keys().copied()).collect();
                k.sort();
                k.dedup();
                k
            };
            let key_pos: HashMap<(usize, usize), usize> = keys.iter().enumerate().map(|(p, k)| (*k, p)).collect();
            let mut m: Matrix<Scalar> = Matrix::zeros(keys.len(), cands.len());
            for (c, img) in images.iter().enumerate() {
                for (k, s) in img {
                    m.set(key_pos[k], c, s.clone());
                }
            }
            let (rref, pivots) = m.rref();
            let mut new_index = Vec::with_capacity(pivots.len());
            for &p in &pivots {
                let idx = weights.len();
                weights.push(wt.clone());
                let mut ei = vec![Vec::new(); r];
                for ((j, t), s) in &images[p] {
                    ei[*j].push((*t, s.clone()));
                }
                e_img.push(ei);
                new_index.push(idx);
                next_level.push(idx);
            }
            for (c, &(b, i)) in cands.iter().enumerate() {
                let coords: Vec<(usize, Scalar)> = pivots
                    .iter()
                    .enumerate()
                    .filter_map(|(row, _)| {
                        let x = rref.get(row, c);
                        (!x.is_zero()).then(|| (new_index[row], x.clone()))
                    })
                    .collect();
                f_img[b][i] = coords;
            }
        }
        level = next_level;
    }
    let n = weights.len();
    while f_img.len() < n {
        f_img.push(vec![Vec::new(); r]);
    }
    let mut e = vec![Matrix::zeros(n, n); r];
    let mut f = vec![Matrix::zeros(n, n); r];
    for b in 0..n {
        for i in 0..r {
            for (t, s) in &e_img[b][i] {
                e[i].set(*t, b, s.clone());
            }
            for (t, s) in &f_img[b][i] {
                f[i].set(*t, b, s.clone());
            }
        }
    }
    Ok(WeightModule { ambient: ambient.clone(), ctx, weights, e, f, h0_grades: None })
}

/// The Levi module spanned by the `𝔭⁻` generators: highest weight `−α_{l0}`,
/// weights the negated `𝔭⁺` roots, basis ordered like `par.pminus_roots`.
pub fn pminus_module(par: &ParabolicDatum, ctx: QContext) -> Result<WeightModule> {
    let ambient = Ambient::levi(par);
    let top: Weight = par.base.simple_root(par.l0_index()).iter().map(|x| -x).collect();
    let m = simple_module(&ambient, &top, ctx)?;
    let targets = par.pminus_weights();
    if m.dim() != targets.len() {
        return Err(QpvError::DimensionMismatch(format!("𝔭⁻ module has dimension {}", m.dim())));
    }
    let perm: Vec<usize> = targets
        .iter()
        .map(|t| m.weights.iter().position(|w| w == t).expect("weights are the negated 𝔭⁺ roots"))
        .collect();
    let mut m = m.permute(&perm);
    m.attach_grading(par);
    Ok(m)
}

/// Free `F`-words applied to `v(λ)`, with the contravariant (Shapovalov) form.
#[derive(Clone, Debug)]
pub struct TruncatedVerma {
    pub lambda: Weight,
    pub depth: usize,
    /// Words `F_{w[0]} F_{w[1]} ⋯ v(λ)`.
    pub words: Vec<Vec<usize>>,
    pub weights: Vec<Weight>,
    /// Per weight: the word indices and the Gram block.
    pub gram: BTreeMap<Weight, (Vec<usize>, Matrix<Scalar>)>,
    ambient: Ambient,
    ctx: QContext,
}

/// A vector of the Verma module as a combination of words.
pub type WordVector = BTreeMap<Vec<usize>, Scalar>;

impl TruncatedVerma {
    pub fn word_weight(&self, word: &[usize]) -> Weight {
        let mut w = self.lambda.clone();
        for &i in word {
            w = sub_w(&w, &self.ambient.simple_root(i));
        }
        w
    }

    /// `E_i F_{j₁}⋯F_{j_k} v = Σ_{p : j_p = i} [μ_p(H_i)]_{q_i} F_{j₁}⋯F̂_{j_p}⋯F_{j_k} v`,
    /// where `μ_p` is the weight of `F_{j_{p+1}}⋯F_{j_k} v`.
    pub fn apply_e(&self, i: usize, x: &WordVector) -> WordVector {
        let mut out: WordVector = BTreeMap::new();
        for (word, c) in x {
            let mut mu = self.word_weight(word);
            // walk from the left; μ_p is the weight after removing letters 0..=p
            for p in 0..word.len() {
                mu = add_w(&mu, &self.ambient.simple_root(word[p]));
                if word[p] != i {
                    continue;
                }
                let coeff = &self.ctx.q_number(mu[i], self.ambient.d[i]) * c;
                let mut shorter = word.clone();
                shorter.remove(p);
                let entry = out.entry(shorter).or_insert_with(Scalar::zero);
                *entry = &*entry + &coeff;
            }
        }
        out.retain(|_, s| !s.is_zero());
        out
    }

    /// `⟨F_w v, F_{w′} v⟩`: the coefficient of `v` in `E_{rev(w)} F_{w′} v`.
    pub fn pairing(&self, w: &[usize], w2: &[usize]) -> Scalar {
        let mut x: WordVector = BTreeMap::from([(w2.to_vec(), Scalar::one())]);
        for &i in w {
            x = self.apply_e(i, &x);
            if x.is_empty() {
                return Scalar::zero();
            }
        }
        x.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Rank of each Gram block, i.e. `dim L(λ)_μ` for the weights reached.
    pub fn block_ranks(&self) -> BTreeMap<Weight, usize> {
        self.gram.iter().map(|(w, (_, g))| (w.clone(), g.rank())).collect()
    }
}

pub fn truncated_verma(ambient: &Ambient, lambda: &[i64], depth: usize, ctx: QContext) -> TruncatedVerma {
    let act = ambient.acting_indices();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &frontier {
            for &i in &act {
                let mut x = vec![i];
                x.extend(w.iter().copied());
                next.push(x);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut tv = TruncatedVerma {
        lambda: lambda.to_vec(),
        depth,
        words: words.clone(),
        weights: Vec::new(),
        gram: BTreeMap::new(),
        ambient: ambient.clone(),
        ctx,
    };
    tv.weights = words.iter().map(|w| tv.word_weight(w)).collect();
    let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (k, w) in tv.weights.iter().enumerate() {
        blocks.entry(w.clone()).or_default().push(k);
    }
    for (wt, idx) in blocks {
        let n = idx.len();
        let mut g = Matrix::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                let x = tv.pairing(&tv.words[idx[a]], &tv.words[idx[b]]);
                g.set(b, a, x.clone());
                g.set(a, b, x);
            }
        }
        tv.gram.insert(wt, (idx, g));
    }
    tv
}

/// `F_i^{λ_i+1} v(λ)` is annihilated by every `E_j`; checked on formal word sums.
pub fn singular_vector_law(ambient: &Ambient, lambda: &[i64], i: usize, ctx: QContext) -> bool {
    let m = (lambda[i] + 1) as usize;
    let tv = TruncatedVerma {
        lambda: lambda.to_vec(),
        depth: m,
        words: Vec::new(),
        weights: Vec::new(),
        gram: BTreeMap::new(),
        ambient: ambient.clone(),
        ctx,
    };
    let x: WordVector = BTreeMap::from([(vec![i; m], Scalar::one())]);
    ambient.acting_indices().iter().all(|&j| tv.apply_e(j, &x).is_empty())
}

/// Classical Weyl dimension formula over the acting indices, using the
/// subsystem spanned by them.
pub fn weyl_dimension(datum: &RootDatum, acting: &[bool], lambda: &[i64]) -> BigRational {
    let rho: Weight = vec![1; datum.rank];
    let mut num = BigRational::from_integer(BigInt::from(1));
    for beta in datum.positive_roots() {
        if beta.iter().enumerate().any(|(j, &c)| c != 0 && !acting[j]) {
            continue;
        }
        let bw = datum.root_to_weight(beta);
        let lr: Weight = lambda.iter().map(|x| x + 1).collect();
        let a = datum.inner(&lr, &bw);
        let b = datum.inner(&rho, &bw);
        num = num * a / b;
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_datum, parabolic, Series};

    fn ctx() -> QContext {
        QContext::new(2)
    }

    #[test]
    fn sl2_defining_module() {
        let d = build_root_datum(Series::A, 1).unwrap();
        let m = simple_module(&Ambient::full(&d), &[1], ctx()).unwrap();
        assert_eq!(m.weights, vec![vec![1], vec![-1]]);
        assert!(m.check_commutators().is_ok());
        assert!(m.check_weight_blocks());
    }

    #[test]
    fn dimensions_match_weyl_formula() {
        for (s, l, lam) in [(Series::A, 2, vec![1, 0]), (Series::A, 2, vec![1, 1]), (Series::C, 2, vec![0, 1]), (Series::B, 2, vec![1, 1])] {
            let d = build_root_datum(s, l).unwrap();
            let m = simple_module(&Ambient::full(&d), &lam, ctx()).unwrap();
            let dim = weyl_dimension(&d, &vec![true; l], &lam);
            assert_eq!(BigRational::from_integer(BigInt::from(m.dim())), dim, "{} {:?}", d.label(), lam);
            assert!(m.check_commutators().is_ok());
            assert!(m.check_serre().is_ok());
        }
    }

    #[test]
    fn non_dominant_is_rejected() {
        let d = build_root_datum(Series::A, 2).unwrap();
        assert!(matches!(simple_module(&Ambient::full(&d), &[-1, 0], ctx()), Err(QpvError::NonDominantWeight(_))));
    }

    #[test]
    fn levi_module_of_a3() {
        let d = build_root_datum(Series::A, 3).unwrap();
        let p = parabolic(&d, 2).unwrap();
        let m = pminus_module(&p, ctx()).unwrap();
        assert_eq!(m.dim(), 4);
        assert!(m.h0_grades.as_ref().unwrap().iter().all(|g| *g == crate::scalar::rat(-1, 1)));
        assert!(m.check_commutators().is_ok());
        assert!(m.check_weight_blocks());
    }

    #[test]
    fn verma_gram_for_sl2() {
        let d = build_root_datum(Series::A, 1).unwrap();
        let tv = truncated_verma(&Ambient::full(&d), &[1], 2, ctx());
        assert_eq!(tv.words.len(), 3);
        let ranks = tv.block_ranks();
        assert_eq!(ranks[&vec![1]], 1);
        assert_eq!(ranks[&vec![-1]], 1);
        assert_eq!(ranks[&vec![-3]], 0);
        assert!(singular_vector_law(&Ambient::full(&d), &[1], 0, ctx()));
    }

    #[test]
    fn tensor_square_of_sl2_defining_module() {
        let d = build_root_datum(Series::A, 1).unwrap();
        let v = simple_module(&Ambient::full(&d), &[1], ctx()).unwrap();
        let vv = tensor(&v, &v).unwrap();
        assert!(vv.check_commutators().is_ok());
        let h = vv.highest_weight_vectors();
        assert_eq!(h.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), vec![vec![2], vec![0]]);
        let comps = vv.isotypic_decompose();
        assert_eq!(comps.iter().map(|c| c.basis.len()).collect::<Vec<_>>(), vec![3, 1]);
        let sum = comps.iter().fold(Matrix::zeros(4, 4), |acc: Matrix<Scalar>, c| acc.add(&c.projection));
        assert_eq!(sum, Matrix::identity(4));
    }

    #[test]
    fn dual_negates_weights() {
        let d = build_root_datum(Series::A, 2).unwrap();
        let v = simple_module(&Ambient::full(&d), &[1, 0], ctx()).unwrap();
        let dv = dual_module(&v);
        assert!(dv.check_commutators().is_ok());
        assert!(dv.check_serre().is_ok());
        let neg: BTreeMap<Weight, usize> = v.character().into_iter().map(|(w, m)| (w.iter().map(|x| -x).collect(), m)).collect();
        assert_eq!(dv.character(), neg);
    }
}
