//! Acceptance suite: one PASS/FAIL line per criterion on the mandatory cases
//! and the stretch case. Every time budget, sample point and bound is pinned
//! below. Oracles are computed independently in this file.

use num_bigint::BigInt;
use num_rational::BigRational;
use qpv::bgg::{bgg_shape, constant_form_highest_weights, dual_derham_matches_bgg, euler_check};
use qpv::braiding::{
    certified_signs, check_square_spectrum, flip_matrix, is_triangular_positive, levi_braiding, self_braiding,
};
use qpv::cartan::{build_root_datum, parabolic, ParabolicDatum, Series};
use qpv::decalculus::{build_calculus, exactness_check, CalculusPresentation, Mode};
use qpv::qalgebra::presentation;
use qpv::repmod::{simple_module, singular_vector_law, Ambient};
use qpv::scalar::{Poly, QContext, Scalar};
use qpv::weyl::{
    bruhat_graph, check_square_products, gauge_between, generate, kostant_weights, random_sign_assignment,
    sign_assignment, DEFAULT_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const MANDATORY: [(Series, usize, usize); 4] =
    [(Series::A, 2, 1), (Series::A, 3, 1), (Series::A, 3, 2), (Series::C, 2, 2)];
const STRETCH: (Series, usize, usize) = (Series::D, 4, 1);

const HILBERT_MAX_DEGREE: usize = 6;
const BIGRADED_MAX_TOTAL: usize = 6;
const EXACTNESS_MAX_T: usize = 5;
const EXACT_SPOT_CHECK_MAX_T: usize = 3;
const SAMPLES: usize = 3;
const SAMPLE_SEED: u64 = 20240601;
const TRIANGULARITY_Q: [(i64, i64); 3] = [(1, 2), (3, 5), (9, 10)];
const CHARACTER_DEPTH: usize = 4;
const EULER_DEPTH: usize = 6;
const PROPERTY_SEED: u64 = 7;
const FIELD_TRIALS: usize = 300;

const BUDGET_1: Duration = Duration::from_secs(10);
const BUDGET_2: Duration = Duration::from_secs(30);
const BUDGET_3: Duration = Duration::from_secs(60);
const BUDGET_4: Duration = Duration::from_secs(60);
const BUDGET_5: Duration = Duration::from_secs(300);
const BUDGET_6: Duration = Duration::from_secs(5);
const BUDGET_7: Duration = Duration::from_secs(10);
const BUDGET_8: Duration = Duration::from_secs(10);
const BUDGET_9: Duration = Duration::from_secs(30);
const BUDGET_10: Duration = Duration::from_secs(120);

/// Criteria that cannot hold as literally stated, with the reason. The suite
/// exits nonzero if any other criterion fails or if one of these starts passing.
const UNATTAINABLE: [(&str, &str); 1] = [(
    "8b",
    "length-2 intervals of W^S under the induced Bruhat order may have a single intermediate: W^S of A2 l0=1 is a three-element chain",
)];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    // Pascal's triangle
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1usize; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

fn par(case: (Series, usize, usize)) -> ParabolicDatum {
    parabolic(&build_root_datum(case.0, case.1).unwrap(), case.2).unwrap()
}

fn all_cases() -> Vec<(Series, usize, usize)> {
    let mut v = MANDATORY.to_vec();
    v.push(STRETCH);
    v
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(rat(0, 1), |acc, (x, y)| acc + x * y)
}

/// `(H₀,H₀) = 4(ϖ,ϖ)/d²` computed from explicit orthonormal coordinates,
/// with short roots of squared length 2.
fn h0_norm_oracle(case: (Series, usize, usize)) -> BigRational {
    let (fund, alpha): (Vec<BigRational>, Vec<BigRational>) = match case {
        (Series::A, l, k) => {
            let m = (l + 1) as i64;
            let fund = (0..l + 1).map(|i| if i < k { rat(1, 1) - rat(k as i64, m) } else { -rat(k as i64, m) }).collect();
            let alpha = (0..l + 1).map(|i| if i == k - 1 { rat(1, 1) } else if i == k { rat(-1, 1) } else { rat(0, 1) }).collect();
            (fund, alpha)
        }
        (Series::C, 2, 2) => (vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(2, 1)]),
        (Series::D, 4, 1) => (vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(-1, 1), rat(0, 1), rat(0, 1)]),
        _ => unreachable!("no oracle for this case"),
    };
    let d = dot(&alpha, &alpha) / rat(2, 1);
    rat(4, 1) * dot(&fund, &fund) / (&d * &d)
}

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    details: String,
    elapsed: Duration,
    budget: Duration,
}

fn run(
    id: &'static str,
    title: &'static str,
    budget: Duration,
    f: impl FnOnce() -> (bool, String),
) -> Outcome {
    let t = Instant::now();
    let (ok, details) = f();
    let elapsed = t.elapsed();
    Outcome { id, title, pass: ok && elapsed <= budget, details, elapsed, budget }
}

fn criterion_1() -> (bool, String) {
    let mut notes = Vec::new();
    let mut ok = true;
    for case in all_cases() {
        let p = par(case);
        let (m, b) = levi_braiding(&p).unwrap();
        let n = m.dim();
        let norm = h0_norm_oracle(case);
        let want = -b.ctx.q_pow(&(rat(4, 1) / &norm)).unwrap();
        let neg = b.negative_eigenvalues();
        let good = neg.len() == 1 && neg[0].0 == want && neg[0].1 == n * (n - 1) / 2;
        ok &= good;
        notes.push(format!("{}: {} x{}", p.label(), neg[0].0, neg[0].1));
    }
    // −q with multiplicity 6 on A3 l0=2, where q = v^D
    let p = par((Series::A, 3, 2));
    let (_, b) = levi_braiding(&p).unwrap();
    let q = Scalar::v_pow(b.ctx.d_root as i64);
    ok &= b.negative_eigenvalues() == vec![(-q, 6)];
    (ok, notes.join("; "))
}

fn criterion_2() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for case in all_cases() {
        let qp = presentation(&par(case)).unwrap();
        let n = qp.n();
        let dims = qp.hilbert_dims(HILBERT_MAX_DEGREE);
        let want: Vec<usize> = (0..=HILBERT_MAX_DEGREE).map(|j| binom(j + n - 1, n - 1)).collect();
        ok &= dims == want;
        notes.push(format!("{}: {:?}", qp.par.label(), dims));
    }
    (ok, notes.join("; "))
}

fn criterion_3(calculi: &[CalculusPresentation]) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for cp in calculi {
        let zz = cp.quadratic.confluence_check();
        let full = cp.calculus.confluence_check();
        ok &= zz.is_confluent() && full.is_confluent() && !full.resolved.is_empty();
        notes.push(format!(
            "{}: {} + {} overlaps",
            cp.quadratic.par.label(),
            zz.resolved.len() + zz.failures.len(),
            full.resolved.len() + full.failures.len()
        ));
    }
    (ok, notes.join("; "))
}

fn criterion_4(calculi: &[CalculusPresentation]) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for cp in calculi {
        let n = cp.n();
        let consts: Vec<usize> = (0..=n + 2).map(|j| cp.calculus.lambda_const_dim(j)).collect();
        ok &= consts == (0..=n + 2).map(|j| binom(n, j)).collect::<Vec<_>>();
        for t in 0..=BIGRADED_MAX_TOTAL {
            for j in 0..=t {
                let dim = cp.calculus.component_basis(j, t - j).basis.len();
                if dim != binom(n, j) * binom(t - j + n - 1, n - 1) {
                    ok = false;
                    notes.push(format!("{} ({j},{}) has {dim}", cp.quadratic.par.label(), t - j));
                }
            }
        }
        for t in 0..=3 {
            for j in 0..=t.min(n) {
                let (dim, l, r) = cp.calculus.freeness_ranks(j, t - j);
                ok &= l == dim && r == dim;
            }
        }
        ok &= cp.calculus.cubic_form_dim_direct() == binom(n, 3);
        notes.push(format!("{}: {:?}", cp.quadratic.par.label(), consts));
    }
    (ok, notes.join("; "))
}

/// Ranks of the commutative polynomial de Rham differential in total degree
/// `t` on `n` variables with the given weights, by exact rational elimination
/// per weight block.
fn classical_ranks(weights: &[Vec<i64>], t: usize) -> Vec<usize> {
    use qpv::linalg::Matrix;
    use std::collections::BTreeMap;
    let n = weights.len();
    let subsets = |j: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == j).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
    };
    fn monomials(n: usize, k: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return if k == 0 { vec![vec![]] } else { vec![] };
        }
        (0..=k).flat_map(|e| monomials(n - 1, k - e).into_iter().map(move |mut m| {
            m.insert(0, e);
            m
        })).collect()
    }
    let weight = |set: &[usize], mono: &[usize]| -> Vec<i64> {
        let mut w = vec![0; weights[0].len()];
        for &i in set {
            for (x, y) in w.iter_mut().zip(&weights[i]) {
                *x += y;
            }
        }
        for (i, &e) in mono.iter().enumerate() {
            for (x, y) in w.iter_mut().zip(&weights[i]) {
                *x += y * e as i64;
            }
        }
        w
    };
    let top = t.min(n);
    let mut ranks = vec![0; top + 1];
    for j in 0..top {
        let src: Vec<(Vec<usize>, Vec<usize>)> =
            subsets(j).into_iter().flat_map(|s| monomials(n, t - j).into_iter().map(move |m| (s.clone(), m))).collect();
        let tgt: Vec<(Vec<usize>, Vec<usize>)> =
            subsets(j + 1).into_iter().flat_map(|s| monomials(n, t - j - 1).into_iter().map(move |m| (s.clone(), m))).collect();
        let mut blocks: BTreeMap<Vec<i64>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (c, (s, m)) in src.iter().enumerate() {
            blocks.entry(weight(s, m)).or_default().0.push(c);
        }
        for (r, (s, m)) in tgt.iter().enumerate() {
            blocks.entry(weight(s, m)).or_default().1.push(r);
        }
        for (cols, rows) in blocks.values() {
            if cols.is_empty() || rows.is_empty() {
                continue;
            }
            let mut mat: Matrix<BigRational> = Matrix::zeros(rows.len(), cols.len());
            for (cc, &c) in cols.iter().enumerate() {
                let (s, m) = &src[c];
                // d(z^a dz_I) = Σ_p a_p z^{a−e_p} dz_p ∧ dz_I
                for p in 0..n {
                    if m[p] == 0 || s.contains(&p) {
                        continue;
                    }
                    let mut m2 = m.clone();
                    m2[p] -= 1;
                    let mut s2 = s.clone();
                    let before = s.iter().filter(|&&i| i < p).count();
                    s2.insert(before, p);
                    let sign = if before % 2 == 0 { 1 } else { -1 };
                    let rr = rows.iter().position(|&r| tgt[r] == (s2.clone(), m2.clone())).unwrap();
                    mat.set(rr, cc, rat(sign * m[p] as i64, 1));
                }
            }
            ranks[j] += mat.rank();
        }
    }
    ranks
}

fn criterion_5(calculi: &[CalculusPresentation]) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    let sampled = Mode::Sampled { samples: SAMPLES, seed: SAMPLE_SEED };
    for cp in calculi {
        let n = cp.n();
        let t0 = Instant::now();
        for t in 1..=EXACTNESS_MAX_T {
            let mut modes = Vec::new();
            if n <= 3 {
                modes.push(Mode::Exact);
            } else {
                modes.push(sampled.clone());
                if t <= EXACT_SPOT_CHECK_MAX_T {
                    modes.push(Mode::Exact);
                }
            }
            for mode in modes {
                match exactness_check(cp, t, &mode) {
                    Ok(r) => {
                        let want = classical_ranks(&cp.quadratic.generators, t);
                        if r.ranks != want {
                            ok = false;
                            notes.push(format!("{} t={t}: ranks {:?}, classical {:?}", cp.quadratic.par.label(), r.ranks, want));
                        }
                    }
                    Err(e) => {
                        ok = false;
                        notes.push(format!("{} t={t}: {e}", cp.quadratic.par.label()));
                    }
                }
            }
        }
        notes.push(format!("{} in {:?}", cp.quadratic.par.label(), t0.elapsed()));
    }
    (ok, notes.join("; "))
}

fn criterion_6() -> (bool, String) {
    let mut ok = true;
    for case in all_cases() {
        let (m, b) = levi_braiding(&par(case)).unwrap();
        let fr = flip_matrix(m.dim()).mul(&b.matrix);
        for (p, q) in TRIANGULARITY_Q {
            ok &= is_triangular_positive(&certified_signs(&fr, &rat(p, q), b.ctx.d_root), true);
        }
    }
    (ok, "flip∘Ř in the weight-lexicographic basis is upper triangular with positive diagonal".into())
}

fn criterion_7() -> (bool, String) {
    let mut ok = true;
    for case in all_cases() {
        let (_, b) = levi_braiding(&par(case)).unwrap();
        ok &= check_square_spectrum(&b);
    }
    // hand-computed e_ν/2 = ((λ,λ+2ρ)·2 − (ν,ν+2ρ))/2 for the defining modules
    let oracles: [(Series, usize, Vec<i64>, Vec<(Vec<i64>, BigRational)>); 2] = [
        (Series::A, 1, vec![1], vec![(vec![2], rat(-1, 2)), (vec![0], rat(3, 2))]),
        (Series::A, 2, vec![1, 0], vec![(vec![2, 0], rat(-2, 3)), (vec![0, 1], rat(4, 3))]),
    ];
    for (s, r, lambda, want) in oracles {
        let datum = build_root_datum(s, r).unwrap();
        let v = simple_module(&Ambient::full(&datum), &lambda, QContext::new(6)).unwrap();
        let b = self_braiding(&v).unwrap();
        ok &= check_square_spectrum(&b);
        for (nu, e) in want {
            ok &= b.spectrum.iter().any(|x| x.nu == nu && x.exponent == e);
        }
    }
    (ok, "Ř² = q^{e_ν} on each component".into())
}

fn criterion_8() -> ((bool, String), (bool, String)) {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut literal = true;
    let mut witness = String::new();
    for case in all_cases() {
        let p = par(case);
        let g = generate(&p.base, DEFAULT_CAP).unwrap();
        if p.rank() <= 3 {
            let all: Vec<usize> = (0..g.len()).collect();
            let full = bruhat_graph(&g, &all);
            match full.squares(&g) {
                Ok(sq) => {
                    let e1 = sign_assignment(&full, &sq).unwrap();
                    let e2 = random_sign_assignment(&full, &sq, PROPERTY_SEED).unwrap();
                    ok &= check_square_products(&sq, &e1)
                        && check_square_products(&sq, &e2)
                        && gauge_between(&full, &e1, &e2).is_some();
                    notes.push(format!("W({}) {} squares", p.base.label(), sq.len()));
                }
                Err(e) => {
                    ok = false;
                    notes.push(e.to_string());
                }
            }
        }
        let reps = g.minimal_coset_reps(&p.levi());
        let gs = bruhat_graph(&g, &reps);
        let (sq, chains) = gs.squares_allowing_chains(&g);
        let e1 = sign_assignment(&gs, &sq).unwrap();
        let e2 = random_sign_assignment(&gs, &sq, PROPERTY_SEED).unwrap();
        ok &= check_square_products(&sq, &e1) && gauge_between(&gs, &e1, &e2).is_some();
        if let Some(iv) = chains.first() {
            literal = false;
            if witness.is_empty() {
                witness = format!(
                    "{}: [{}, {}] has 1 intermediate",
                    p.label(),
                    g.word_string(gs.vertices[iv.bottom]),
                    g.word_string(gs.vertices[iv.top])
                );
            }
        }
    }
    ((ok, notes.join("; ")), (literal, witness))
}

fn criterion_9(calculi: &[CalculusPresentation]) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for cp in calculi {
        let p = &cp.quadratic.par;
        let g = generate(&p.base, DEFAULT_CAP).unwrap();
        let mut profile = Vec::new();
        for k in 0..=cp.n() {
            let mut kw = kostant_weights(&g, p, k);
            kw.sort();
            let hw = constant_form_highest_weights(cp, k).unwrap();
            ok &= hw == kw;
            profile.push(hw.len());
        }
        if p.label() == "A3 l0=2" {
            ok &= profile == vec![1, 1, 2, 1, 1];
        }
        if p.label() == "A2 l0=1" {
            ok &= profile == vec![1, 1, 1];
        }
        notes.push(format!("{}: {:?}", p.label(), profile));
    }
    (ok, notes.join("; "))
}

fn criterion_10(calculi: &[CalculusPresentation]) -> (bool, String) {
    let mut ok = true;
    for cp in calculi {
        let p = &cp.quadratic.par;
        let shape = bgg_shape(p).unwrap();
        for k in 0..=cp.n() {
            let c = dual_derham_matches_bgg(cp, &shape, k, CHARACTER_DEPTH).unwrap();
            ok &= c.matches && c.leading_dim == binom(cp.n(), k) as i64;
        }
        let e = euler_check(p, &shape, EULER_DEPTH).unwrap();
        ok &= e.holds();
    }
    (ok, format!("form degrees 0..=n, depth {CHARACTER_DEPTH}; Euler to t = {EULER_DEPTH}"))
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let num: Vec<i64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(-3..=3)).collect();
    let mut den: Vec<i64> = (0..rng.gen_range(1..3)).map(|_| rng.gen_range(-2..=2)).collect();
    if den.iter().all(|&c| c == 0) {
        den = vec![1];
    }
    let a = Scalar::from_poly(Poly::from_i64s(&num), rng.gen_range(-2..=2));
    let b = Scalar::from_poly(Poly::from_i64s(&den), 0);
    &a / &b
}

fn criterion_11(calculi: &[CalculusPresentation]) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED);
    let mut ok = true;
    let mut notes = Vec::new();
    // module identities and the singular-vector law
    let mut modules = 0;
    for case in all_cases() {
        let p = par(case);
        let full = Ambient::full(&p.base);
        let r = p.rank();
        for _ in 0..3 {
            let lambda: Vec<i64> = (0..r).map(|_| rng.gen_range(0..=1)).collect();
            if r >= 4 && lambda.iter().sum::<i64>() > 1 {
                continue;
            }
            let m = simple_module(&full, &lambda, QContext::new(2)).unwrap();
            ok &= m.check_commutators().is_ok() && m.check_serre().is_ok() && m.check_weight_blocks();
            let i = rng.gen_range(0..r);
            ok &= singular_vector_law(&full, &lambda, i, QContext::new(2));
            modules += 1;
        }
    }
    for cp in calculi {
        let m = &cp.quadratic.module;
        ok &= m.check_commutators().is_ok() && m.check_serre().is_ok();
        ok &= cp.quadratic.classical_limit_is_commutative() && cp.classical_limit_ok();
    }
    notes.push(format!("{modules} random simple modules"));
    // field axioms
    let mut field_ok = true;
    for _ in 0..FIELD_TRIALS {
        let (a, b, c) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
        field_ok &= &(&a + &b) + &c == &a + &(&b + &c);
        field_ok &= &(&a * &b) * &c == &a * &(&b * &c);
        field_ok &= &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
        field_ok &= &a * &b == &b * &a && &a + &b == &b + &a;
        field_ok &= (&a - &a).is_zero();
        if !b.is_zero() {
            field_ok &= &(&a / &b) * &b == a;
        }
        field_ok &= a.to_string().parse::<Scalar>().ok() == Some(a.clone());
    }
    ok &= field_ok;
    notes.push(format!("{FIELD_TRIALS} field-axiom triples"));
    (ok, notes.join("; "))
}

fn main() {
    let calculi: Vec<CalculusPresentation> = all_cases().into_iter().map(|c| build_calculus(&par(c)).unwrap()).collect();
    let mut outcomes = vec![
        run("1", "unique negative eigenvalue", BUDGET_1, criterion_1),
        run("2", "quadratic Hilbert series", BUDGET_2, criterion_2),
        run("3", "confluence of the rewriting systems", BUDGET_3, || criterion_3(&calculi)),
        run("4", "constant-form and bigraded dimensions", BUDGET_4, || criterion_4(&calculi)),
        run("5", "d² = 0 and Ker d = Im d", BUDGET_5, || criterion_5(&calculi)),
        run("6", "triangularity of the braiding", BUDGET_6, criterion_6),
        run("7", "Drinfeld spectrum audit", BUDGET_7, criterion_7),
    ];
    let t8 = Instant::now();
    let (c8a, c8b) = criterion_8();
    let e8 = t8.elapsed();
    outcomes.push(Outcome {
        id: "8a",
        title: "Bruhat squares on W, signs and gauge uniqueness on W and W^S",
        pass: c8a.0 && e8 <= BUDGET_8,
        details: c8a.1,
        elapsed: e8,
        budget: BUDGET_8,
    });
    outcomes.push(Outcome {
        id: "8b",
        title: "every length-2 interval of W^S has 0 or 2 intermediates",
        pass: c8b.0,
        details: c8b.1,
        elapsed: e8,
        budget: BUDGET_8,
    });
    outcomes.push(run("9", "Kostant level counts", BUDGET_9, || criterion_9(&calculi)));
    outcomes.push(run("10", "dual de Rham characters and BGG", BUDGET_10, || criterion_10(&calculi)));
    outcomes.push(run("11", "property suites", Duration::from_secs(120), || criterion_11(&calculi)));

    let mut unexpected = false;
    for o in &outcomes {
        let known = UNATTAINABLE.iter().find(|(id, _)| *id == o.id);
        println!(
            "criterion {:<3} {:<4} {} ({:.2?} / budget {:?}) {}",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.title,
            o.elapsed,
            o.budget,
            o.details
        );
        match (o.pass, known) {
            (false, Some((_, why))) => println!("              known: {why}"),
            (false, None) => unexpected = true,
            (true, Some(_)) => {
                println!("              listed as unattainable but passed");
                unexpected = true;
            }
            (true, None) => {}
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("acceptance: {passed}/{} criteria pass", outcomes.len());
    if unexpected {
        std::process::exit(1);
    }
}
