//! Quadratic rewriting systems on words over a finite alphabet, generic over
//! the coefficient field. Letters are ordered by index and words
//! degree-lexicographically; every rule `ab → Σ c·xy` must strictly decrease.

use crate::scalar::Field;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

pub type Word = Vec<u8>;
pub type Lin<F> = BTreeMap<Word, F>;

pub fn lin_add<F: Field>(acc: &mut Lin<F>, w: Word, c: &F) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&w) {
        Some(x) => {
            *x = x.add(c);
            if x.is_zero() {
                acc.remove(&w);
            }
        }
        None => {
            acc.insert(w, c.clone());
        }
    }
}

pub fn lin_add_scaled<F: Field>(acc: &mut Lin<F>, other: &Lin<F>, c: &F) {
    for (w, x) in other {
        lin_add(acc, w.clone(), &x.mul(c));
    }
}

#[derive(Clone, Debug)]
pub struct Rule<F> {
    pub lhs: (u8, u8),
    pub rhs: Vec<((u8, u8), F)>,
}

/// Result of a degree-3 overlap check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapCertificate {
    pub resolved: Vec<Word>,
    pub failures: Vec<Word>,
}

impl OverlapCertificate {
    pub fn is_confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug)]
pub struct RewriteSystem<F: Field> {
    pub letters: usize,
    rules: HashMap<(u8, u8), Vec<((u8, u8), F)>>,
    order: Vec<(u8, u8)>,
    memo: RefCell<HashMap<(u8, Word), Lin<F>>>,
}

impl<F: Field> Clone for RewriteSystem<F> {
    fn clone(&self) -> Self {
        RewriteSystem {
            letters: self.letters,
            rules: self.rules.clone(),
            order: self.order.clone(),
            memo: RefCell::new(HashMap::new()),
        }
    }
}

impl<F: Field> RewriteSystem<F> {
    /// Builds the system; fails with the offending left side if some rule does
    /// not strictly decrease in the word order or a left side repeats.
    pub fn new(letters: usize, rules: Vec<Rule<F>>) -> Result<Self, (u8, u8)> {
        let mut map = HashMap::new();
        let mut order = Vec::new();
        for r in rules {
            for ((x, y), _) in &r.rhs {
                if (*x, *y) >= r.lhs {
                    return Err(r.lhs);
                }
            }
            let rhs: Vec<_> = r.rhs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if map.insert(r.lhs, rhs).is_some() {
                return Err(r.lhs);
            }
            order.push(r.lhs);
        }
        order.sort();
        Ok(RewriteSystem { letters, rules: map, order, memo: RefCell::new(HashMap::new()) })
    }

    pub fn rules(&self) -> Vec<Rule<F>> {
        self.order.iter().map(|lhs| Rule { lhs: *lhs, rhs: self.rules[lhs].clone() }).collect()
    }

    pub fn rule(&self, a: u8, b: u8) -> Option<&Vec<((u8, u8), F)>> {
        self.rules.get(&(a, b))
    }

    pub fn is_reducible_pair(&self, a: u8, b: u8) -> bool {
        self.rules.contains_key(&(a, b))
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        w.windows(2).all(|p| !self.is_reducible_pair(p[0], p[1]))
    }

    /// `a·u` in normal form, for a normal word `u`.
    fn insert(&self, a: u8, u: &[u8]) -> Lin<F> {
        if u.is_empty() || !self.is_reducible_pair(a, u[0]) {
            let mut w = Vec::with_capacity(u.len() + 1);
            w.push(a);
            w.extend_from_slice(u);
            return BTreeMap::from([(w, F::one())]);
        }
        let key = (a, u.to_vec());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let mut out: Lin<F> = BTreeMap::new();
        for ((x, y), c) in &self.rules[&(a, u[0])] {
            let inner = self.insert(*y, &u[1..]);
            for (w, c2) in inner {
                let outer = self.insert(*x, &w);
                lin_add_scaled(&mut out, &outer, &c.mul(&c2));
            }
        }
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    pub fn normal_form(&self, w: &[u8]) -> Lin<F> {
        if w.len() <= 1 {
            return BTreeMap::from([(w.to_vec(), F::one())]);
        }
        let tail = self.normal_form(&w[1..]);
        let mut out = BTreeMap::new();
        for (u, c) in tail {
            let part = self.insert(w[0], &u);
            lin_add_scaled(&mut out, &part, &c);
        }
        out
    }

    pub fn normal_form_lin(&self, x: &Lin<F>) -> Lin<F> {
        let mut out = BTreeMap::new();
        for (w, c) in x {
            lin_add_scaled(&mut out, &self.normal_form(w), c);
        }
        out
    }

    /// One rewrite at position `p`, the rest untouched.
    pub fn rewrite_at(&self, w: &[u8], p: usize) -> Option<Lin<F>> {
        let rhs = self.rules.get(&(w[p], w[p + 1]))?;
        let mut out = BTreeMap::new();
        for ((x, y), c) in rhs {
            let mut v = w[..p].to_vec();
            v.push(*x);
            v.push(*y);
            v.extend_from_slice(&w[p + 2..]);
            lin_add(&mut out, v, c);
        }
        Some(out)
    }

    /// Diamond-lemma check: every overlap `abc` with `ab` and `bc` both left
    /// sides reduces to the same normal form from either side.
    pub fn confluence_check(&self) -> OverlapCertificate {
        let mut resolved = Vec::new();
        let mut failures = Vec::new();
        for &(a, b) in &self.order {
            for c in 0..self.letters as u8 {
                if !self.is_reducible_pair(b, c) {
                    continue;
                }
                let w = vec![a, b, c];
                let left = self.normal_form_lin(&self.rewrite_at(&w, 0).expect("rule"));
                let right = self.normal_form_lin(&self.rewrite_at(&w, 1).expect("rule"));
                if left == right {
                    resolved.push(w);
                } else {
                    failures.push(w);
                }
            }
        }
        OverlapCertificate { resolved, failures }
    }

    /// Irreducible words of length `len` over the letters in `alphabet`.
    pub fn irreducible_words(&self, alphabet: &[u8], len: usize) -> Vec<Word> {
        let mut level: Vec<Word> = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &level {
                for &a in alphabet {
                    if let Some(&last) = w.last() {
                        if self.is_reducible_pair(last, a) {
                            continue;
                        }
                    }
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            level = next;
        }
        level
    }

    /// Specializes every coefficient.
    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<RewriteSystem<G>, E> {
        let mut rules = HashMap::new();
        for (lhs, rhs) in &self.rules {
            let mut out = Vec::with_capacity(rhs.len());
            for (m, c) in rhs {
                out.push((*m, f(c)?));
            }
            rules.insert(*lhs, out);
        }
        Ok(RewriteSystem { letters: self.letters, rules, order: self.order.clone(), memo: RefCell::new(HashMap::new()) })
    }

    pub fn clear_cache(&self) {
        self.memo.borrow_mut().clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    fn quantum_plane(q: BigRational) -> RewriteSystem<BigRational> {
        // y x → q x y over letters x = 0, y = 1
        RewriteSystem::new(2, vec![Rule { lhs: (1, 0), rhs: vec![((0, 1), q)] }]).unwrap()
    }

    #[test]
    fn quantum_plane_normal_forms() {
        let s = quantum_plane(rat(2, 1));
        let nf = s.normal_form(&[1, 1, 0]);
        assert_eq!(nf, BTreeMap::from([(vec![0, 1, 1], rat(4, 1))]));
        assert!(s.confluence_check().is_confluent());
        assert_eq!(s.irreducible_words(&[0, 1], 3).len(), 4);
    }

    #[test]
    fn non_decreasing_rules_are_rejected() {
        let bad = RewriteSystem::new(2, vec![Rule { lhs: (0, 1), rhs: vec![((1, 0), rat(1, 1))] }]);
        assert!(bad.is_err());
    }

    #[test]
    fn non_confluent_system_is_detected() {
        // zyx with zy → 0·…, yx → xy, zx → xz·2: overlaps disagree
        let rules = vec![
            Rule { lhs: (2, 1), rhs: vec![((1, 2), rat(1, 1))] },
            Rule { lhs: (1, 0), rhs: vec![((0, 1), rat(1, 1))] },
            Rule { lhs: (2, 0), rhs: vec![((0, 2), rat(2, 1))] },
            Rule { lhs: (1, 1), rhs: vec![((0, 2), rat(1, 1))] },
        ];
        let s = RewriteSystem::new(3, rules).unwrap();
        assert!(!s.confluence_check().is_confluent());
    }
}
