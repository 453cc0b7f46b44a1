//! Weyl groups as matrix groups on fundamental-weight coordinates, parabolic
//! quotients, Bruhat graphs, squares and sign assignments.

use crate::cartan::{ParabolicDatum, RootDatum, Weight};
use crate::error::{QpvError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, VecDeque};

pub const DEFAULT_CAP: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Row-major `rank × rank` action on fundamental-weight coordinates.
    pub matrix: Vec<i64>,
    /// A reduced word (0-based generator indices), `w = s_{word[0]} ⋯ s_{word[k-1]}`.
    pub word: Vec<usize>,
    pub length: usize,
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub datum: RootDatum,
    pub elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    /// `left[i][w]` is the index of `s_i w`.
    left: Vec<Vec<usize>>,
    /// `right[i][w]` is the index of `w s_i`.
    right: Vec<Vec<usize>>,
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

fn mat_apply(a: &[i64], v: &[i64]) -> Vec<i64> {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum()).collect()
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// `s_i(λ) = λ − λ_i α_i`.
pub fn simple_reflection(datum: &RootDatum, i: usize) -> Vec<i64> {
    let n = datum.rank;
    let mut m = identity(n);
    for k in 0..n {
        m[k * n + i] -= datum.cartan[k][i];
    }
    m
}

/// Enumerates the Weyl group by breadth-first search, which yields reduced words.
pub fn generate(datum: &RootDatum, cap: usize) -> Result<WeylGroup> {
    let n = datum.rank;
    let gens: Vec<Vec<i64>> = (0..n).map(|i| simple_reflection(datum, i)).collect();
    let mut elements = vec![WeylElement { matrix: identity(n), word: vec![], length: 0 }];
    let mut index = HashMap::new();
    index.insert(identity(n), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(w) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let m = mat_mul(&elements[w].matrix, g, n);
            if index.contains_key(&m) {
                continue;
            }
            if elements.len() >= cap {
                return Err(QpvError::GroupTooLarge { cap });
            }
            let mut word = elements[w].word.clone();
            word.push(i);
            let length = elements[w].length + 1;
            index.insert(m.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(WeylElement { matrix: m, word, length });
        }
    }
    let lookup = |m: &Vec<i64>| index[m];
    let left = gens.iter().map(|g| elements.iter().map(|e| lookup(&mat_mul(g, &e.matrix, n))).collect()).collect();
    let right = gens.iter().map(|g| elements.iter().map(|e| lookup(&mat_mul(&e.matrix, g, n))).collect()).collect();
    Ok(WeylGroup { datum: datum.clone(), elements, index, left, right })
}

impl WeylGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length
    }

    pub fn find(&self, matrix: &[i64]) -> Option<usize> {
        self.index.get(matrix).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&mat_mul(&self.elements[a].matrix, &self.elements[b].matrix, self.rank())]
    }

    pub fn inverse(&self, w: usize) -> usize {
        let mut x = 0;
        for &i in self.elements[w].word.iter().rev() {
            x = self.right[i][x];
        }
        x
    }

    pub fn left_mul_simple(&self, i: usize, w: usize) -> usize {
        self.left[i][w]
    }

    pub fn right_mul_simple(&self, w: usize, i: usize) -> usize {
        self.right[i][w]
    }

    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |x, &i| self.right[i][x])
    }

    pub fn act(&self, w: usize, lambda: &[i64]) -> Weight {
        mat_apply(&self.elements[w].matrix, lambda)
    }

    /// `w·λ = w(λ+ρ) − ρ`.
    pub fn affine_action(&self, w: usize, lambda: &[i64]) -> Weight {
        let shifted: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
        self.act(w, &shifted).iter().map(|x| x - 1).collect()
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: usize) -> usize {
        self.datum
            .positive_roots()
            .iter()
            .filter(|b| {
                let img = self.act(w, &self.datum.root_to_weight(b));
                let c = self.datum.weight_to_root(&img).expect("root lattice");
                c.iter().all(|&x| x <= 0)
            })
            .count()
    }

    pub fn longest(&self) -> usize {
        (0..self.len()).max_by_key(|&w| self.length(w)).expect("nonempty")
    }

    /// Elements of the parabolic subgroup `W_S` (0-based `levi` indices).
    pub fn levi_subgroup(&self, levi: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for &i in levi {
                let x = self.right[i][w];
                if !seen[x] {
                    seen[x] = true;
                    out.push(x);
                    queue.push_back(x);
                }
            }
        }
        out.sort_by_key(|&w| (self.length(w), w));
        out
    }

    /// `W^S = {w : l(s_i w) > l(w) for all i ∈ S}`, sorted by length.
    pub fn minimal_coset_reps(&self, levi: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&w| levi.iter().all(|&i| self.length(self.left[i][w]) > self.length(w)))
            .collect()
    }

    /// `w = w_S · w^S` with lengths adding.
    pub fn parabolic_decompose(&self, w: usize, levi: &[usize]) -> (usize, usize) {
        let mut rest = w;
        let mut prefix: Vec<usize> = Vec::new();
        'outer: loop {
            for &i in levi {
                let x = self.left[i][rest];
                if self.length(x) < self.length(rest) {
                    prefix.push(i);
                    rest = x;
                    continue 'outer;
                }
            }
            break;
        }
        (self.from_word(&prefix), rest)
    }

    /// All elements obtainable as subwords of the stored reduced word of `w`.
    pub fn lower_ideal(&self, w: usize) -> Vec<bool> {
        let mut set = vec![false; self.len()];
        set[0] = true;
        let mut members = vec![0usize];
        for &i in &self.elements[w].word {
            let grown: Vec<usize> = members.iter().map(|&x| self.right[i][x]).filter(|&x| !set[x]).collect();
            for x in grown {
                if !set[x] {
                    set[x] = true;
                    members.push(x);
                }
            }
        }
        set
    }

    pub fn bruhat_leq(&self, u: usize, w: usize) -> bool {
        self.lower_ideal(w)[u]
    }

    /// All reflections, as conjugates `w s_i w⁻¹` of simple reflections.
    pub fn reflections(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.len()];
        for w in 0..self.len() {
            let wi = self.inverse(w);
            for i in 0..self.rank() {
                let t = self.mul(self.right[i][w], wi);
                if !seen[t] {
                    seen[t] = true;
                    out.push(t);
                }
            }
        }
        out.sort();
        out
    }

    pub fn word_string(&self, w: usize) -> String {
        if self.elements[w].word.is_empty() {
            return "e".into();
        }
        self.elements[w].word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("")
    }
}

/// `β_k = s_{i₁}⋯s_{i_{k−1}}(α_{i_k})` along the reduced word `w₀ = w_{0,S} · w₀^S`,
/// returned in simple-root coordinates.
pub fn convex_order(group: &WeylGroup, par: &ParabolicDatum) -> Vec<Vec<i64>> {
    let levi = par.levi();
    let ws = group.levi_subgroup(&levi);
    let w0s = *ws.iter().max_by_key(|&&w| group.length(w)).expect("nonempty");
    let quotient = group.minimal_coset_reps(&levi);
    let w0_top = *quotient.iter().max_by_key(|&&w| group.length(w)).expect("nonempty");
    let mut word = group.element(w0s).word.clone();
    word.extend(group.element(w0_top).word.iter().copied());
    let mut prefix = group.identity();
    let mut out = Vec::with_capacity(word.len());
    for &i in &word {
        let beta = group.act(prefix, &group.datum.simple_root(i));
        out.push(group.datum.weight_to_root(&beta).expect("root lattice"));
        prefix = group.right_mul_simple(prefix, i);
    }
    out
}

#[derive(Clone, Debug)]
pub struct BruhatGraph {
    /// Group indices of the vertices, sorted by length.
    pub vertices: Vec<usize>,
    pub lengths: Vec<usize>,
    /// Local vertex indices `(w′, w″)` with `l(w″) = l(w′)+1`.
    pub edges: Vec<(usize, usize)>,
}

pub fn bruhat_graph(group: &WeylGroup, vertices: &[usize]) -> BruhatGraph {
    let mut verts = vertices.to_vec();
    verts.sort_by_key(|&w| (group.length(w), w));
    let reflections = group.reflections();
    let mut is_reflection = vec![false; group.len()];
    for t in reflections {
        is_reflection[t] = true;
    }
    let lengths: Vec<usize> = verts.iter().map(|&w| group.length(w)).collect();
    let inverses: Vec<usize> = verts.iter().map(|&w| group.inverse(w)).collect();
    let mut edges = Vec::new();
    for a in 0..verts.len() {
        for (b, &wb) in verts.iter().enumerate() {
            if lengths[b] != lengths[a] + 1 {
                continue;
            }
            if is_reflection[group.mul(wb, inverses[a])] {
                edges.push((a, b));
            }
        }
    }
    BruhatGraph { vertices: verts, lengths, edges }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    /// Local vertex indices `w < w′₁, w′₂ < w″`.
    pub bottom: usize,
    pub middle: (usize, usize),
    pub top: usize,
    /// Edge indices `w→w′₁, w′₁→w″, w→w′₂, w′₂→w″`.
    pub edges: [usize; 4],
}

/// A length-2 interval `w < w″` together with its intermediate vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub bottom: usize,
    pub top: usize,
    pub middle: Vec<usize>,
}

impl BruhatGraph {
    pub fn edge_index(&self) -> HashMap<(usize, usize), usize> {
        self.edges.iter().enumerate().map(|(k, &e)| (e, k)).collect()
    }

    /// Vertex pairs reachable by directed paths (including the trivial path).
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut out_adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            out_adj[a].push(b);
        }
        (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                seen[s] = true;
                let mut stack = vec![s];
                while let Some(x) = stack.pop() {
                    for &y in &out_adj[x] {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Every Bruhat-comparable pair at length distance 2, with its intermediates.
    pub fn length_two_intervals(&self, group: &WeylGroup) -> Vec<Interval> {
        let n = self.vertices.len();
        let mut out_adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            out_adj[a].push(b);
        }
        let mut res = Vec::new();
        for a in 0..n {
            let ideal_cache: Vec<(usize, Vec<bool>)> = (0..n)
                .filter(|&c| self.lengths[c] == self.lengths[a] + 2)
                .map(|c| (c, group.lower_ideal(self.vertices[c])))
                .collect();
            for (c, ideal) in ideal_cache {
                if !ideal[self.vertices[a]] {
                    continue;
                }
                let middle: Vec<usize> =
                    out_adj[a].iter().copied().filter(|&b| out_adj[b].contains(&c)).collect();
                res.push(Interval { bottom: a, top: c, middle });
            }
        }
        res
    }

    /// All squares. Fails if some length-2 interval has an intermediate count
    /// outside `{0, 2}`.
    pub fn squares(&self, group: &WeylGroup) -> Result<Vec<Square>> {
        let (squares, defects) = self.squares_allowing_chains(group);
        if let Some(iv) = defects.first() {
            return Err(QpvError::StructureViolation(format!(
                "interval ({}, {}) has {} intermediates",
                group.word_string(self.vertices[iv.bottom]),
                group.word_string(self.vertices[iv.top]),
                iv.middle.len()
            )));
        }
        Ok(squares)
    }

    /// Squares together with the length-2 intervals whose intermediate count is
    /// not in `{0, 2}`.
    pub fn squares_allowing_chains(&self, group: &WeylGroup) -> (Vec<Square>, Vec<Interval>) {
        let idx = self.edge_index();
        let mut squares = Vec::new();
        let mut defects = Vec::new();
        for iv in self.length_two_intervals(group) {
            if iv.middle.len() == 2 {
                let (m1, m2) = (iv.middle[0], iv.middle[1]);
                squares.push(Square {
                    bottom: iv.bottom,
                    middle: (m1, m2),
                    top: iv.top,
                    edges: [idx[&(iv.bottom, m1)], idx[&(m1, iv.top)], idx[&(iv.bottom, m2)], idx[&(m2, iv.top)]],
                });
            } else if !iv.middle.is_empty() {
                defects.push(iv);
            }
        }
        (squares, defects)
    }

    pub fn to_json(&self, group: &WeylGroup, signs: Option<&[i8]>) -> serde_json::Value {
        let words: Vec<Vec<usize>> =
            self.vertices.iter().map(|&w| group.element(w).word.iter().map(|i| i + 1).collect()).collect();
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(a, b)| [a, b]).collect();
        serde_json::json!({
            "vertices": words,
            "edges": edges,
            "signs": signs.map(|s| s.to_vec()).unwrap_or_default(),
        })
    }
}

/// Solves the GF(2) system (one unknown per edge, one parity equation per
/// square) and returns the lexicographically smallest solution as signs.
pub fn sign_assignment(graph: &BruhatGraph, squares: &[Square]) -> Result<Vec<i8>> {
    sign_assignment_with(graph, squares, |_| false)
}

/// A solution whose free variables are chosen uniformly at random.
pub fn random_sign_assignment(graph: &BruhatGraph, squares: &[Square], seed: u64) -> Result<Vec<i8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices: Vec<bool> = (0..graph.edges.len()).map(|_| rng.gen()).collect();
    sign_assignment_with(graph, squares, |k| choices[k])
}

/// Solves the sign system, setting each free variable `k` to `free(k)`. Pivots
/// are taken at the largest column indices first, so every pivot variable
/// depends only on free variables of smaller index; with all free variables at
/// 0 this gives the lexicographically smallest solution.
pub fn sign_assignment_with(graph: &BruhatGraph, squares: &[Square], free: impl Fn(usize) -> bool) -> Result<Vec<i8>> {
    let m = graph.edges.len();
    let words = m / 64 + 1;
    // bit m holds the right-hand side
    let mut rows: Vec<Vec<u64>> = squares
        .iter()
        .map(|sq| {
            let mut row = vec![0u64; words];
            for &e in &sq.edges {
                row[e / 64] ^= 1 << (e % 64);
            }
            row[m / 64] ^= 1 << (m % 64);
            row
        })
        .collect();
    let bit = |row: &Vec<u64>, k: usize| (row[k / 64] >> (k % 64)) & 1 == 1;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in (0..m).rev() {
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i], c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row, c) {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    if rows[r..].iter().any(|row| bit(row, m)) {
        return Err(QpvError::UnsolvableSystem);
    }
    let mut x = vec![false; m];
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m];
        for &(_, c) in &pivots {
            v[c] = true;
        }
        v
    };
    for k in 0..m {
        if !is_pivot[k] {
            x[k] = free(k);
        }
    }
    for &(row, c) in &pivots {
        let mut val = bit(&rows[row], m);
        for k in 0..c {
            if bit(&rows[row], k) && x[k] {
                val = !val;
            }
        }
        x[c] = val;
    }
    Ok(x.iter().map(|&b| if b { -1 } else { 1 }).collect())
}

pub fn check_square_products(squares: &[Square], signs: &[i8]) -> bool {
    squares.iter().all(|sq| sq.edges.iter().map(|&e| signs[e] as i64).product::<i64>() == -1)
}

/// Finds `γ : vertices → {±1}` with `ε(w′→w″) = γ(w″)⁻¹ ε′(w′→w″) γ(w′)`,
/// propagating outward from the lowest vertex along edges.
pub fn gauge_between(graph: &BruhatGraph, eps: &[i8], eps_prime: &[i8]) -> Option<Vec<i8>> {
    let n = graph.vertices.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, &(a, b)) in graph.edges.iter().enumerate() {
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    let mut gamma: Vec<Option<i8>> = vec![None; n];
    for start in 0..n {
        if gamma[start].is_some() {
            continue;
        }
        gamma[start] = Some(1);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(y, k) in &adj[x] {
                // γ(w″) = ε ε′ γ(w′) and symmetrically, all values ±1
                let value = gamma[x].map(|g| g * eps_prime[k] * eps[k]);
                if gamma[y].is_none() {
                    gamma[y] = value;
                    queue.push_back(y);
                }
            }
        }
    }
    let gamma: Vec<i8> = gamma.into_iter().map(|g| g.unwrap_or(1)).collect();
    let ok = graph
        .edges
        .iter()
        .enumerate()
        .all(|(k, &(a, b))| eps[k] == gamma[b] * eps_prime[k] * gamma[a]);
    ok.then_some(gamma)
}

/// `{w·0 : w ∈ W^S, l(w) = r}`.
pub fn kostant_weights(group: &WeylGroup, par: &ParabolicDatum, r: usize) -> Vec<Weight> {
    let zero = vec![0; group.rank()];
    group
        .minimal_coset_reps(&par.levi())
        .into_iter()
        .filter(|&w| group.length(w) == r)
        .map(|w| group.affine_action(w, &zero))
        .collect()
}

/// `|{w ∈ W^S : l(w) = k}|` for `k = 0..=max`.
pub fn length_profile(group: &WeylGroup, elements: &[usize]) -> Vec<usize> {
    let max = elements.iter().map(|&w| group.length(w)).max().unwrap_or(0);
    let mut prof = vec![0; max + 1];
    for &w in elements {
        prof[group.length(w)] += 1;
    }
    prof
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_datum, parabolic, Series};

    fn group(s: Series, l: usize) -> WeylGroup {
        generate(&build_root_datum(s, l).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn orders_and_lengths() {
        let a1 = group(Series::A, 1);
        assert_eq!(a1.len(), 2);
        let a2 = group(Series::A, 2);
        assert_eq!(a2.len(), 6);
        assert_eq!(a2.length(a2.longest()), 3);
        for (s, l, order) in [(Series::A, 3, 24), (Series::C, 2, 8), (Series::B, 3, 48), (Series::D, 4, 192)] {
            let g = group(s, l);
            assert_eq!(g.len(), order);
            for w in 0..g.len() {
                assert_eq!(g.inversion_count(w), g.length(w));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = build_root_datum(Series::A, 3).unwrap();
        assert!(matches!(generate(&d, 10), Err(QpvError::GroupTooLarge { cap: 10 })));
    }

    #[test]
    fn quotient_of_a3() {
        let g = group(Series::A, 3);
        let q = g.minimal_coset_reps(&[0, 2]);
        assert_eq!(q.len(), 6);
        assert_eq!(length_profile(&g, &q), vec![1, 1, 2, 1, 1]);
        let (ws, wq) = g.parabolic_decompose(g.longest(), &[0, 2]);
        assert_eq!((g.length(ws), g.length(wq)), (2, 4));
        assert_eq!(g.mul(ws, wq), g.longest());
    }

    #[test]
    fn bruhat_examples() {
        let g = group(Series::A, 2);
        let s1 = g.from_word(&[0]);
        let s2 = g.from_word(&[1]);
        assert!(!g.bruhat_leq(s1, s2));
        assert!(g.bruhat_leq(s1, g.from_word(&[1, 0])));
        let graph = bruhat_graph(&g, &(0..g.len()).collect::<Vec<_>>());
        assert_eq!(graph.edges.len(), 8);
    }

    #[test]
    fn affine_action_examples() {
        let g = group(Series::A, 2);
        assert_eq!(g.affine_action(0, &[3, 1]), vec![3, 1]);
        let s1 = g.from_word(&[0]);
        assert_eq!(g.affine_action(s1, &[0, 0]), vec![-2, 1]);
        // −2α₁ − α₂ = (−4+1, 2−2)
        assert_eq!(g.affine_action(g.from_word(&[0, 1]), &[0, 0]), vec![-3, 0]);
    }

    #[test]
    fn sign_solutions_are_gauge_equivalent() {
        let g = group(Series::A, 3);
        let graph = bruhat_graph(&g, &(0..g.len()).collect::<Vec<_>>());
        let sq = graph.squares(&g).unwrap();
        let eps = sign_assignment(&graph, &sq).unwrap();
        assert!(check_square_products(&sq, &eps));
        let eps2 = random_sign_assignment(&graph, &sq, 7).unwrap();
        assert!(check_square_products(&sq, &eps2));
        assert!(gauge_between(&graph, &eps, &eps2).is_some());
    }

    #[test]
    fn convex_order_tail() {
        let d = build_root_datum(Series::A, 3).unwrap();
        let g = generate(&d, DEFAULT_CAP).unwrap();
        let p = parabolic(&d, 2).unwrap();
        let order = convex_order(&g, &p);
        assert_eq!(order.len(), 6);
        let mut tail: Vec<Vec<i64>> = order[2..].to_vec();
        tail.sort();
        assert_eq!(tail, p.pminus_roots);
    }
}
