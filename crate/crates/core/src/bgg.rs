//! Generalized BGG combinatorics on `W^S` and the character-level comparison
//! of the dual de Rham complex with the generalized BGG resolution.

use crate::cartan::{ParabolicDatum, Weight};
use crate::decalculus::CalculusPresentation;
use crate::error::{QpvError, Result};
use crate::linalg::Matrix;
use crate::qalgebra::coproduct_action;
use crate::repmod::{simple_module, Ambient};
use crate::scalar::QContext;
use crate::weyl::{
    bruhat_graph, generate, sign_assignment, BruhatGraph, Interval, Square, WeylGroup, DEFAULT_CAP,
};
use num_rational::BigRational;
use serde::Serialize;
use std::collections::BTreeMap;

/// Weight multiplicities keyed by `(degree, weight)`.
pub type GradedCharacter = BTreeMap<(usize, Weight), i64>;

#[derive(Clone, Debug)]
pub struct GVCharacter {
    pub lambda: Weight,
    pub levi_char: BTreeMap<Weight, usize>,
    pub depth: usize,
    pub graded_char: GradedCharacter,
}

impl GVCharacter {
    pub fn degree_dim(&self, d: usize) -> i64 {
        self.graded_char.iter().filter(|((k, _), _)| *k == d).map(|(_, m)| m).sum()
    }
}

/// Weight multisets of `d` elements drawn with repetition from `weights`, for `d = 0..=depth`.
pub fn symmetric_power_characters(weights: &[Weight], rank: usize, depth: usize) -> Vec<BTreeMap<Weight, i64>> {
    let mut out: Vec<BTreeMap<Weight, i64>> = Vec::with_capacity(depth + 1);
    // each partial multiset carries the smallest index it may still extend by
    let mut level: Vec<(usize, Weight)> = vec![(0, vec![0; rank])];
    for _ in 0..=depth {
        let mut ch = BTreeMap::new();
        for (_, w) in &level {
            *ch.entry(w.clone()).or_insert(0) += 1;
        }
        out.push(ch);
        let mut next = Vec::new();
        for (start, w) in &level {
            for (p, g) in weights.iter().enumerate().skip(*start) {
                next.push((p, w.iter().zip(g).map(|(a, b)| a + b).collect()));
            }
        }
        level = next;
    }
    out
}

/// Character of the generalized Verma module induced from `L(𝔨, λ)`, truncated
/// at `depth`: the Levi character times the symmetric algebra on `𝔭⁻`.
pub fn gv_character(par: &ParabolicDatum, lambda: &[i64], depth: usize) -> Result<GVCharacter> {
    let ambient = Ambient::levi(par);
    if ambient.acting_indices().iter().any(|&i| lambda[i] < 0) {
        return Err(QpvError::WeightNotInCone(lambda.to_vec()));
    }
    let levi = simple_module(&ambient, lambda, QContext::new(2))?;
    let levi_char = levi.character();
    let sym = symmetric_power_characters(&par.pminus_weights(), par.rank(), depth);
    let mut graded_char = BTreeMap::new();
    for (d, slice) in sym.iter().enumerate() {
        for (mu, a) in &levi_char {
            for (nu, b) in slice {
                let w: Weight = mu.iter().zip(nu).map(|(x, y)| x + y).collect();
                *graded_char.entry((d, w)).or_insert(0) += *a as i64 * b;
            }
        }
    }
    Ok(GVCharacter { lambda: lambda.to_vec(), levi_char, depth, graded_char })
}

#[derive(Clone, Debug, Serialize)]
pub struct BGGVertex {
    /// 1-based reduced word.
    pub word: Vec<usize>,
    pub dot_weight: Weight,
}

#[derive(Clone, Debug)]
pub struct BGGShape {
    pub group: WeylGroup,
    /// `W^S` split by length.
    pub degrees: Vec<Vec<BGGVertex>>,
    pub graph: BruhatGraph,
    pub squares: Vec<Square>,
    /// Length-2 intervals with exactly one intermediate.
    pub chains: Vec<Interval>,
    pub signs: Vec<i8>,
}

impl BGGShape {
    pub fn profile(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degrees": self.degrees,
            "graph": self.graph.to_json(&self.group, Some(&self.signs)),
            "squares": self.squares.len(),
            "chains": self.chains.len(),
        })
    }
}

/// The terms of the generalized BGG resolution with their Bruhat edges and a
/// sign assignment making every square anticommute. Intervals of `W^S` with a
/// single intermediate carry no square condition.
pub fn bgg_shape(par: &ParabolicDatum) -> Result<BGGShape> {
    let group = generate(&par.base, DEFAULT_CAP)?;
    let reps = group.minimal_coset_reps(&par.levi());
    let graph = bruhat_graph(&group, &reps);
    let (squares, chains) = graph.squares_allowing_chains(&group);
    let signs = sign_assignment(&graph, &squares)?;
    let zero = vec![0; par.rank()];
    let top = graph.lengths.iter().copied().max().unwrap_or(0);
    let mut degrees = vec![Vec::new(); top + 1];
    for &w in &graph.vertices {
        degrees[group.length(w)].push(BGGVertex {
            word: group.element(w).word.iter().map(|i| i + 1).collect(),
            dot_weight: group.affine_action(w, &zero),
        });
    }
    if top != par.n() {
        return Err(QpvError::DimensionMismatch(format!("longest element of W^S has length {top}")));
    }
    Ok(BGGShape { group, degrees, graph, squares, chains, signs })
}

/// Character of the form-degree `k` part of the calculus, read off its normal
/// basis, with polynomial degree as the grading.
pub fn form_character(cp: &CalculusPresentation, k: usize, depth: usize) -> GradedCharacter {
    let mut ch = BTreeMap::new();
    for m in 0..=depth {
        for w in cp.calculus.component_basis(k, m).basis {
            *ch.entry((m, cp.calculus.word_weight(&w))).or_insert(0) += 1;
        }
    }
    ch
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterComparison {
    pub k: usize,
    pub depth: usize,
    pub matches: bool,
    /// First `(degree, weight, left, right)` disagreement.
    pub witness: Option<(usize, Weight, i64, i64)>,
    pub leading_dim: i64,
}

/// Sum of the generalized Verma characters at `w·0` over `w ∈ W^S` with `l(w) = k`.
pub fn bgg_term_character(par: &ParabolicDatum, shape: &BGGShape, k: usize, depth: usize) -> Result<GradedCharacter> {
    let mut ch = BTreeMap::new();
    for v in shape.degrees.get(k).map(|d| d.as_slice()).unwrap_or(&[]) {
        for (key, m) in gv_character(par, &v.dot_weight, depth)?.graded_char {
            *ch.entry(key).or_insert(0) += m;
        }
    }
    ch.retain(|_, m| *m != 0);
    Ok(ch)
}

/// Compares the form-degree `k` character with the `k`-th BGG term, aligned by
/// matching the lowest graded pieces.
pub fn dual_derham_matches_bgg(
    cp: &CalculusPresentation,
    shape: &BGGShape,
    k: usize,
    depth: usize,
) -> Result<CharacterComparison> {
    let par = &cp.quadratic.par;
    let left = form_character(cp, k, depth);
    let right = bgg_term_character(par, shape, k, depth)?;
    let keys: std::collections::BTreeSet<&(usize, Weight)> = left.keys().chain(right.keys()).collect();
    let witness = keys.into_iter().find_map(|key| {
        let a = left.get(key).copied().unwrap_or(0);
        let b = right.get(key).copied().unwrap_or(0);
        (a != b).then(|| (key.0, key.1.clone(), a, b))
    });
    let leading_dim = left.iter().filter(|((d, _), _)| *d == 0).map(|(_, m)| m).sum();
    Ok(CharacterComparison { k, depth, matches: witness.is_none(), witness, leading_dim })
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerReport {
    pub depth: usize,
    /// `Σ_k (−1)^k dim C_k[t]` for `t = 0..=depth`.
    pub alternating_dims: Vec<i64>,
    /// Whether the alternating sum of characters is `δ_{t,0}` weight by weight.
    pub characters_cancel: bool,
}

impl EulerReport {
    pub fn holds(&self) -> bool {
        self.characters_cancel
            && self.alternating_dims.iter().enumerate().all(|(t, &x)| x == i64::from(t == 0))
    }
}

/// `Σ_k (−1)^k C_k[t] = δ_{t,0}`, where `C_k[t]` is the degree `t − k` part of
/// the `k`-th BGG term. Never reads the sign assignment.
pub fn euler_check(par: &ParabolicDatum, shape: &BGGShape, depth: usize) -> Result<EulerReport> {
    let mut total: BTreeMap<(usize, Weight), i64> = BTreeMap::new();
    for k in 0..shape.degrees.len().min(depth + 1) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for ((d, w), m) in bgg_term_character(par, shape, k, depth - k)? {
            *total.entry((d + k, w)).or_insert(0) += sign * m;
        }
    }
    let alternating_dims: Vec<i64> =
        (0..=depth).map(|t| total.iter().filter(|((d, _), _)| *d == t).map(|(_, m)| m).sum()).collect();
    total.retain(|_, m| *m != 0);
    let zero = vec![0; par.rank()];
    let characters_cancel = total.len() == 1 && total.get(&(0, zero)) == Some(&1);
    Ok(EulerReport { depth, alternating_dims, characters_cancel })
}

/// Highest weights of the classical (`q = 1`) Levi decomposition of the
/// degree-`k` constant forms: per weight, the joint kernel of the raising
/// operators specialized at `v = 1`.
pub fn constant_form_highest_weights(cp: &CalculusPresentation, k: usize) -> Result<Vec<Weight>> {
    let calc = &cp.calculus;
    let dz: Vec<u8> = (0..calc.n as u8).collect();
    let basis = calc.system.irreducible_words(&dz, k);
    let module = &cp.quadratic.module;
    let one = BigRational::from_integer(1.into());
    let mut raising: Vec<Matrix<BigRational>> = Vec::new();
    for i in module.ambient.acting_indices() {
        let e = coproduct_action(module, &calc.system, &basis, i, true);
        raising.push(e.try_map(|c| c.evaluate(&one))?);
    }
    let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (p, w) in basis.iter().enumerate() {
        blocks.entry(calc.word_weight(w)).or_default().push(p);
    }
    let mut out = Vec::new();
    for (wt, cols) in blocks {
        let cols = &cols;
        let rows: Vec<Vec<BigRational>> = raising
            .iter()
            .flat_map(|e| (0..e.rows()).map(move |r| cols.iter().map(|&c| e.get(r, c).clone()).collect::<Vec<_>>()))
            .collect();
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
        for _ in 0..cols.len() - rank {
            out.push(wt.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// CSV with columns `degree, weight, multiplicity`; weights as `(a,b,…)`.
pub fn character_csv(ch: &GradedCharacter) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| QpvError::Io(e.to_string());
    w.write_record(["degree", "weight", "multiplicity"]).map_err(io)?;
    for ((d, wt), m) in ch {
        let ws = format!("({})", wt.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        w.write_record([d.to_string(), ws, m.to_string()]).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| QpvError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| QpvError::Io(e.to_string()))
}

pub fn character_json(ch: &GradedCharacter) -> serde_json::Value {
    serde_json::Value::Array(
        ch.iter()
            .map(|((d, w), m)| serde_json::json!({"degree": d, "weight": w, "multiplicity": m}))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_datum, parabolic, Series};
    use crate::decalculus::build_calculus;
    use crate::qalgebra::binomial;

    fn par(s: Series, l: usize, n0: usize) -> ParabolicDatum {
        parabolic(&build_root_datum(s, l).unwrap(), n0).unwrap()
    }

    #[test]
    fn trivial_character() {
        let p = par(Series::A, 3, 2);
        let ch = gv_character(&p, &[0, 0, 0], 4).unwrap();
        for d in 0..=4 {
            assert_eq!(ch.degree_dim(d), binomial(d + 3, 3) as i64);
        }
        let s2 = gv_character(&p, &[1, -2, 1], 0).unwrap();
        assert_eq!(s2.degree_dim(0), 4);
    }

    #[test]
    fn non_levi_dominant_is_rejected() {
        let p = par(Series::A, 3, 2);
        assert!(matches!(gv_character(&p, &[-1, 0, 0], 1), Err(QpvError::WeightNotInCone(_))));
    }

    #[test]
    fn shapes() {
        assert_eq!(bgg_shape(&par(Series::A, 3, 2)).unwrap().profile(), vec![1, 1, 2, 1, 1]);
        assert_eq!(bgg_shape(&par(Series::A, 2, 1)).unwrap().profile(), vec![1, 1, 1]);
        let a1 = bgg_shape(&par(Series::A, 1, 1)).unwrap();
        assert_eq!(a1.degrees[1][0].dot_weight, vec![-2]);
    }

    #[test]
    fn quantum_plane_matches_bgg() {
        let p = par(Series::A, 2, 1);
        let cp = build_calculus(&p).unwrap();
        let shape = bgg_shape(&p).unwrap();
        for k in 0..=2 {
            let c = dual_derham_matches_bgg(&cp, &shape, k, 4).unwrap();
            assert!(c.matches, "{c:?}");
            assert_eq!(c.leading_dim, binomial(2, k) as i64);
        }
        assert!(euler_check(&p, &shape, 6).unwrap().holds());
        let hw = constant_form_highest_weights(&cp, 1).unwrap();
        assert_eq!(hw.len(), 1);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let ch = BTreeMap::from([((0usize, vec![0i64, -1]), 1i64)]);
        let s = character_csv(&ch).unwrap();
        assert_eq!(s, "degree,weight,multiplicity\n0,\"(0,-1)\",1\n");
    }
}
