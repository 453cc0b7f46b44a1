//! The differential calculus: relation families, bigraded bases, the
//! differential and exactness in both modes.

use qpv::cartan::{build_root_datum, parabolic, Series};
use qpv::decalculus::{build_calculus, exactness_check, Mode};

pub fn main() {
    let par = parabolic(&build_root_datum(Series::A, 3).unwrap(), 2).unwrap();
    let cp = build_calculus(&par).unwrap();
    let n = cp.n();
    println!("{}: {} mixed rules, {} form rules", par.label(), cp.zd_rules.len(), cp.dd_rules.len());
    println!("confluent: {}", cp.calculus.confluence_check().is_confluent());
    println!("constant forms: {:?}", (0..=n + 1).map(|j| cp.calculus.lambda_const_dim(j)).collect::<Vec<_>>());

    let d = cp.calculus.differential(1, 1);
    println!("d: {:?} -> {:?} is {}x{}", d.source, d.target, d.matrix.rows(), d.matrix.cols());
    for (r, c, x) in d.triplets().iter().take(5) {
        println!("  ({r}, {c}) = {x}");
    }

    for t in 1..=4 {
        let r = exactness_check(&cp, t, &Mode::Exact).unwrap();
        println!("t = {t}: dims {:?}, ranks {:?}, {}", r.dims, r.ranks, r.status);
    }
    let r = exactness_check(&cp, 5, &Mode::Sampled { samples: 3, seed: 1 }).unwrap();
    println!("t = 5 sampled at {:?}: {}", r.samples, serde_json::to_string(&r).unwrap());
}
