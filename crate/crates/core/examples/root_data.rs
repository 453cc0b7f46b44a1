//! Root data and parabolic data for every supported commutative parabolic case.

use qpv::cartan::{build_root_datum, fmt_rat, parabolic, Series};

pub fn main() {
    for (series, rank) in [(Series::A, 3), (Series::B, 3), (Series::C, 2), (Series::D, 4)] {
        let datum = build_root_datum(series, rank).expect("supported type");
        println!("{}: cartan {:?}, d {:?}, admissible nodes {:?}", datum.label(), datum.cartan, datum.d, datum.admissible_nodes());
        for l0 in datum.admissible_nodes() {
            let par = parabolic(&datum, l0).expect("admissible node");
            println!(
                "  {}: n = {}, (H0,H0) = {}, H0 coefficients {:?}",
                par.label(),
                par.n(),
                fmt_rat(&par.h0_norm),
                par.h0_coeffs.iter().map(fmt_rat).collect::<Vec<_>>()
            );
            println!("    p- roots {:?}", par.pminus_roots);
        }
    }
}
