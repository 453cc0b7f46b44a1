//! Simple modules, tensor products and duals over the quantized enveloping algebra.

use qpv::cartan::{build_root_datum, Series};
use qpv::repmod::{dual_module, simple_module, singular_vector_law, tensor, weyl_dimension, Ambient};
use qpv::scalar::QContext;

pub fn main() {
    let datum = build_root_datum(Series::A, 2).unwrap();
    let amb = Ambient::full(&datum);
    let ctx = QContext::new(2);
    for lambda in [[1, 0], [0, 1], [1, 1], [2, 0]] {
        let m = simple_module(&amb, &lambda, ctx).unwrap();
        println!(
            "L({lambda:?}): dim {} (Weyl formula {}), commutators ok {}, Serre ok {}",
            m.dim(),
            weyl_dimension(&datum, &[true, true], &lambda),
            m.check_commutators().is_ok(),
            m.check_serre().is_ok()
        );
    }

    let v = simple_module(&amb, &[1, 0], ctx).unwrap();
    let vv = tensor(&v, &v).unwrap();
    for c in vv.isotypic_decompose() {
        println!("V⊗V ⊃ L({:?}) with multiplicity {}", c.highest_weight, c.multiplicity);
    }
    let dual = dual_module(&v);
    println!("V* weights {:?}", dual.weights);

    for i in 0..2 {
        println!("F_{}^(λ_i+1) v(1,1) is singular: {}", i + 1, singular_vector_law(&amb, &[1, 1], i, ctx));
    }
}
