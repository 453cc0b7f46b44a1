//! Case selection, check orchestration, reports and serialization behind the
//! `qpv` binary.

use crate::bgg::{bgg_shape, constant_form_highest_weights, dual_derham_matches_bgg, euler_check, BGGShape};
use crate::braiding::{
    certified_signs, check_naturality, flip_matrix, is_triangular_positive, T0_SIGN,
};
use crate::cartan::{build_root_datum, fmt_rat, parabolic, ParabolicDatum, Series};
use crate::decalculus::{build_calculus, exactness_check, expected_dim, CalculusPresentation, Mode};
use crate::error::{QpvError, Result};
use crate::qalgebra::{binomial, presentation, QuadraticPresentation};
use crate::scalar::rat;
use crate::weyl::{
    bruhat_graph, check_square_products, gauge_between, generate, kostant_weights, length_profile,
    random_sign_assignment, DEFAULT_CAP,
};
use serde::Serialize;
use std::time::Instant;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSpec {
    pub series: char,
    pub rank: usize,
    pub l0: usize,
    pub max_total_degree: usize,
    pub mode: String,
    pub sample_count: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Quadratic,
    Calculus,
    Bgg,
}

impl Suite {
    /// Parses a suite name; `all` expands to every suite.
    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        match s {
            "quadratic" => Some(vec![Suite::Quadratic]),
            "calculus" => Some(vec![Suite::Calculus]),
            "bgg" => Some(vec![Suite::Bgg]),
            "all" => Some(vec![Suite::Quadratic, Suite::Calculus, Suite::Bgg]),
            _ => None,
        }
    }
}

impl CaseSpec {
    pub fn new(series: Series, rank: usize, l0: usize) -> Self {
        CaseSpec { series: series.letter(), rank, l0, max_total_degree: 4, mode: "exact".into(), sample_count: 3, seed: 0 }
    }

    /// The parabolic datum; fails for unsupported types or inadmissible nodes.
    pub fn parabolic(&self) -> Result<ParabolicDatum> {
        let series = Series::parse(&self.series.to_string())
            .ok_or(QpvError::UnsupportedType { series: self.series, rank: self.rank })?;
        let datum = build_root_datum(series, self.rank)?;
        parabolic(&datum, self.l0)
    }

    pub fn validate(&self) -> Result<()> {
        self.parabolic()?;
        if self.max_total_degree < 1 {
            return Err(QpvError::Mismatch("max total degree must be at least 1".into()));
        }
        if self.mode != "exact" && self.mode != "sampled" {
            return Err(QpvError::Mismatch(format!("unknown mode {}", self.mode)));
        }
        Ok(())
    }

    pub fn calculus_mode(&self) -> Mode {
        if self.mode == "sampled" {
            Mode::Sampled { samples: self.sample_count, seed: self.seed }
        } else {
            Mode::Exact
        }
    }
}

/// Whether an error stems from an invalid case selection.
pub fn is_usage_error(e: &QpvError) -> bool {
    matches!(e, QpvError::UnsupportedType { .. } | QpvError::InadmissibleNode { .. } | QpvError::Mismatch(_))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub details: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Convention {
    pub d_root: u32,
    pub t0_sign: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub case: CaseSpec,
    pub convention: Convention,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn timed(id: &str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    let t = Instant::now();
    let (status, details) = match f() {
        Ok((true, d)) => (Status::Pass, d),
        Ok((false, d)) => (Status::Fail, d),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    CheckResult { id: id.into(), status, details, elapsed_ms: t.elapsed().as_millis() }
}

/// Multi-line summary: root datum, `𝔭⁻` roots, `(H₀,H₀)` and the `W^S` profile.
pub fn run_info(case: &CaseSpec) -> Result<String> {
    let par = case.parabolic()?;
    let group = generate(&par.base, DEFAULT_CAP)?;
    let reps = group.minimal_coset_reps(&par.levi());
    let mut out = String::new();
    out.push_str(&format!("case: {}\n", par.label()));
    out.push_str(&format!("cartan: {:?}\n", par.base.cartan));
    out.push_str(&format!("d: {:?}\n", par.base.d));
    out.push_str(&format!("n={}\n", par.n()));
    out.push_str(&format!("(H0,H0)={}\n", fmt_rat(&par.h0_norm)));
    out.push_str(&format!("pminus_roots: {:?}\n", par.pminus_roots));
    out.push_str(&format!("|W|={} |W^S|={}\n", group.len(), reps.len()));
    out.push_str(&format!("profile {:?}\n", length_profile(&group, &reps)));
    Ok(out)
}

/// The deterministic JSON bundle `{datum, presentation, calculus, braiding_spectrum}`.
pub fn build_bundle(case: &CaseSpec) -> Result<String> {
    let par = case.parabolic()?;
    let cp = build_calculus(&par)?;
    let bundle = serde_json::json!({
        "version": VERSION,
        "datum": par.to_json(),
        "presentation": cp.quadratic.to_json(),
        "calculus": cp.to_json(),
        "braiding_spectrum": {
            "levi": cp.quadratic.braiding.spectrum_json(),
            "fodc": cp.fodc.spectrum_json(),
        },
    });
    Ok(serde_json::to_string_pretty(&bundle).expect("bundle serializes") + "\n")
}

pub fn run_build(case: &CaseSpec, out: &std::path::Path) -> Result<()> {
    let bundle = build_bundle(case)?;
    std::fs::write(out, bundle).map_err(|e| QpvError::Io(format!("{}: {e}", out.display())))
}

fn quadratic_checks(case: &CaseSpec, qp: &QuadraticPresentation) -> Vec<CheckResult> {
    let n = qp.n();
    let par = &qp.par;
    let mut out = Vec::new();
    out.push(timed("quadratic.spectrum", || {
        let neg = qp.braiding.negative_eigenvalues();
        let desc: Vec<String> = neg.iter().map(|(e, m)| format!("{e} x{m}")).collect();
        let ok = if n == 1 { neg.is_empty() } else { neg.len() == 1 && neg[0].1 == n * (n - 1) / 2 };
        Ok((ok, format!("negative eigenvalues [{}], (H0,H0)={}", desc.join(", "), fmt_rat(&par.h0_norm))))
    }));
    out.push(timed("quadratic.hilbert", || {
        let top = case.max_total_degree.max(6);
        let dims = qp.hilbert_dims(top);
        let want: Vec<usize> = (0..=top).map(|j| binomial(j + n - 1, n - 1)).collect();
        Ok((dims == want, format!("dims {dims:?}")))
    }));
    out.push(timed("quadratic.confluence", || {
        let c = qp.confluence_check();
        Ok((c.is_confluent(), format!("{} overlaps, {} failures", c.resolved.len() + c.failures.len(), c.failures.len())))
    }));
    out.push(timed("quadratic.classical_limit", || {
        Ok((qp.classical_limit_is_commutative(), "rules at q=1 are transpositions".into()))
    }));
    out.push(timed("quadratic.levi_stable", || Ok((qp.relation_space_is_levi_stable()?, String::new()))));
    out.push(timed("quadratic.naturality", || Ok((check_naturality(&qp.module, &qp.braiding)?, String::new()))));
    out.push(timed("quadratic.triangularity", || {
        let m = flip_matrix(n).mul(&qp.braiding.matrix);
        let mut ok = true;
        for (a, b) in [(1, 2), (3, 5), (9, 10)] {
            ok &= is_triangular_positive(&certified_signs(&m, &rat(a, b), qp.ctx.d_root), true);
        }
        Ok((ok, "flip∘Ř upper triangular with positive diagonal at q = 1/2, 3/5, 9/10".into()))
    }));
    out
}

fn calculus_checks(case: &CaseSpec, cp: &CalculusPresentation) -> Vec<CheckResult> {
    let n = cp.n();
    let calc = &cp.calculus;
    let t_max = case.max_total_degree;
    let mut out = Vec::new();
    out.push(timed("calculus.confluence", || {
        let c = calc.confluence_check();
        Ok((c.is_confluent(), format!("{} overlaps, {} failures", c.resolved.len() + c.failures.len(), c.failures.len())))
    }));
    out.push(timed("calculus.classical_limit", || Ok((cp.classical_limit_ok(), String::new()))));
    out.push(timed("calculus.constant_forms", || {
        let dims: Vec<usize> = (0..=n + 1).map(|j| calc.lambda_const_dim(j)).collect();
        let want: Vec<usize> = (0..=n + 1).map(|j| binomial(n, j)).collect();
        Ok((dims == want, format!("dims {dims:?}")))
    }));
    out.push(timed("calculus.bigraded_dims", || {
        for t in 0..=t_max {
            for j in 0..=t.min(n) {
                let d = calc.component_basis(j, t - j).basis.len();
                if d != expected_dim(n, j, t - j) {
                    return Ok((false, format!("bidegree ({j},{}) has dimension {d}", t - j)));
                }
            }
        }
        Ok((true, format!("j+k ≤ {t_max}")))
    }));
    out.push(timed("calculus.freeness", || {
        for t in 0..=t_max.min(3) {
            for j in 0..=t.min(n) {
                let (dim, l, r) = calc.freeness_ranks(j, t - j);
                if l != dim || r != dim {
                    return Ok((false, format!("bidegree ({j},{}): dim {dim}, left {l}, right {r}", t - j)));
                }
            }
        }
        for k in 0..=t_max.min(3) {
            let (dim, r) = calc.fodc_spanning_rank(k);
            if dim != r {
                return Ok((false, format!("first-order forms of degree {k} not spanned")));
            }
        }
        Ok((true, String::new()))
    }));
    out.push(timed("calculus.cubic_forms", || {
        let d = calc.cubic_form_dim_direct();
        Ok((d == binomial(n, 3), format!("dim {d}")))
    }));
    out.push(timed("calculus.leibniz", || {
        let f = calc.leibniz_failures(40, case.seed);
        Ok((f == 0, format!("{f} failures in 40 trials")))
    }));
    out.push(timed("calculus.exactness", || {
        let mode = case.calculus_mode();
        let mut details = Vec::new();
        for t in 1..=t_max {
            let r = exactness_check(cp, t, &mode)?;
            details.push(format!("t={t} dims {:?} ranks {:?}", r.dims, r.ranks));
        }
        Ok((true, format!("{}: {}", case.mode, details.join("; "))))
    }));
    out
}

fn bgg_checks(case: &CaseSpec, cp: &CalculusPresentation, shape: &BGGShape) -> Vec<CheckResult> {
    let par = &cp.quadratic.par;
    let n = cp.n();
    let mut out = Vec::new();
    out.push(timed("bgg.kostant", || {
        for k in 0..=n {
            let mut kw = kostant_weights(&shape.group, par, k);
            kw.sort();
            let hw = constant_form_highest_weights(cp, k)?;
            if hw != kw {
                return Ok((false, format!("degree {k}: {} components vs {} coset representatives", hw.len(), kw.len())));
            }
        }
        Ok((true, format!("profile {:?}", shape.profile())))
    }));
    if par.rank() > 3 {
        out.push(CheckResult {
            id: "bgg.weyl_intervals".into(),
            status: Status::Skipped,
            details: "rank above 3".into(),
            elapsed_ms: 0,
        });
    } else {
        out.push(timed("bgg.weyl_intervals", || {
        let all: Vec<usize> = (0..shape.group.len()).collect();
        let g = bruhat_graph(&shape.group, &all);
        let squares = g.squares(&shape.group)?;
        let eps = crate::weyl::sign_assignment(&g, &squares)?;
        Ok((check_square_products(&squares, &eps), format!("{} squares on W", squares.len())))
        }));
    }
    out.push(timed("bgg.signs", || {
        let ok = check_square_products(&shape.squares, &shape.signs);
        let other = random_sign_assignment(&shape.graph, &shape.squares, case.seed ^ 0x5eed)?;
        let gauge = gauge_between(&shape.graph, &shape.signs, &other).is_some();
        Ok((
            ok && gauge,
            format!(
                "{} squares, {} single-intermediate intervals on W^S, gauge equivalent: {gauge}",
                shape.squares.len(),
                shape.chains.len()
            ),
        ))
    }));
    out.push(timed("bgg.characters", || {
        let depth = case.max_total_degree.min(4);
        for k in 0..=n {
            let c = dual_derham_matches_bgg(cp, shape, k, depth)?;
            if !c.matches || c.leading_dim != binomial(n, k) as i64 {
                return Ok((false, format!("form degree {k}: witness {:?}", c.witness)));
            }
        }
        Ok((true, format!("form degrees 0..={n}, depth {depth}")))
    }));
    out.push(timed("bgg.euler", || {
        let r = euler_check(par, shape, 6)?;
        Ok((r.holds(), format!("alternating dims {:?}", r.alternating_dims)))
    }));
    out
}

/// Runs the selected suites; checks are sorted by id.
pub fn run_verify(case: &CaseSpec, suites: &[Suite]) -> Result<VerificationReport> {
    case.validate()?;
    let par = case.parabolic()?;
    let mut checks = Vec::new();
    let mut d_root = 0;
    let needs_calculus = suites.iter().any(|s| *s != Suite::Quadratic);
    if needs_calculus {
        let cp = build_calculus(&par)?;
        d_root = cp.ctx.d_root;
        if suites.contains(&Suite::Quadratic) {
            checks.extend(quadratic_checks(case, &cp.quadratic));
        }
        if suites.contains(&Suite::Calculus) {
            checks.extend(calculus_checks(case, &cp));
        }
        if suites.contains(&Suite::Bgg) {
            match bgg_shape(&par) {
                Ok(shape) => checks.extend(bgg_checks(case, &cp, &shape)),
                Err(e) => checks.push(timed("bgg.shape", || Err(e))),
            }
        }
    } else {
        let qp = presentation(&par)?;
        d_root = qp.ctx.d_root.max(d_root);
        checks.extend(quadratic_checks(case, &qp));
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(VerificationReport {
        version: VERSION.into(),
        case: case.clone(),
        convention: Convention { d_root, t0_sign: T0_SIGN },
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn info_for_a3() {
        let s = run_info(&CaseSpec::new(Series::A, 3, 2)).unwrap();
        assert!(s.contains("n=4"));
        assert!(s.contains("(H0,H0)=4"));
        assert!(s.contains("profile [1, 1, 2, 1, 1]"));
    }

    #[test]
    fn usage_errors() {
        let e = CaseSpec::new(Series::B, 3, 2).parabolic().unwrap_err();
        assert!(is_usage_error(&e));
        assert_eq!(Suite::parse("all").unwrap().len(), 3);
        assert!(Suite::parse("nope").is_none());
    }

    #[test]
    fn bundle_is_deterministic() {
        let c = CaseSpec::new(Series::A, 2, 1);
        let a = build_bundle(&c).unwrap();
        assert_eq!(a, build_bundle(&c).unwrap());
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["presentation"]["rules"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn quadratic_suite_passes_on_a2() {
        let r = run_verify(&CaseSpec::new(Series::A, 2, 1), &[Suite::Quadratic]).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }
}
