//! The quadratic algebra on the 𝔭⁻ generators: rules, confluence, normal forms
//! and Hilbert dimensions.

use qpv::cartan::{build_root_datum, parabolic, Series};
use qpv::qalgebra::presentation;

pub fn main() {
    let par = parabolic(&build_root_datum(Series::A, 3).unwrap(), 2).unwrap();
    let qp = presentation(&par).unwrap();
    println!("{}: generators with weights {:?}", par.label(), qp.generators);
    for r in qp.system.rules() {
        let rhs: Vec<String> =
            r.rhs.iter().map(|((a, b), c)| format!("({c}) z{}z{}", a + 1, b + 1)).collect();
        println!("  z{}z{} -> {}", r.lhs.0 + 1, r.lhs.1 + 1, rhs.join(" + "));
    }
    let cert = qp.confluence_check();
    println!("overlaps resolved: {}, failures: {}", cert.resolved.len(), cert.failures.len());
    println!("Hilbert dimensions: {:?}", qp.hilbert_dims(6));
    println!("classical limit commutative: {}", qp.classical_limit_is_commutative());
    let nf = qp.normal_form(&[3, 2, 1, 0]);
    for (w, c) in &nf {
        println!("  z4z3z2z1 ∋ ({c}) {:?}", w.iter().map(|x| x + 1).collect::<Vec<_>>());
    }
    println!("presentation JSON: {}", qp.to_json());
}
