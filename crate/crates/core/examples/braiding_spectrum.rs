//! The Levi self-braiding on the tensor square of the generator module:
//! spectrum, the unique negative eigenvalue and triangularity.

use qpv::braiding::{certified_signs, check_braid_relation, flip_matrix, is_triangular_positive, levi_braiding};
use qpv::cartan::{build_root_datum, fmt_rat, parabolic, Series};
use qpv::scalar::rat;

pub fn main() {
    for (s, r, l0) in [(Series::A, 2, 1), (Series::A, 3, 2), (Series::C, 2, 2)] {
        let par = parabolic(&build_root_datum(s, r).unwrap(), l0).unwrap();
        let (module, b) = levi_braiding(&par).unwrap();
        let n = module.dim();
        println!("{} (n = {n}, D = {}, (H0,H0) = {})", par.label(), b.ctx.d_root, fmt_rat(&par.h0_norm));
        for e in &b.spectrum {
            println!("  component {:?}: eigenvalue {} on {} dims", e.nu, e.eigenvalue, e.mult);
        }
        println!("  negative: {:?}", b.negative_eigenvalues().iter().map(|(e, m)| format!("{e} x{m}")).collect::<Vec<_>>());
        let fr = flip_matrix(n).mul(&b.matrix);
        for (p, q) in [(1, 2), (3, 5), (9, 10)] {
            let signs = certified_signs(&fr, &rat(p, q), b.ctx.d_root);
            println!("  q = {p}/{q}: flip∘Ř upper triangular, positive diagonal: {}", is_triangular_positive(&signs, true));
        }
        if n <= 3 {
            println!("  braid relation: {}", check_braid_relation(&b, n));
        }
    }
}
