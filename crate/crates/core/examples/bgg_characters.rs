//! Generalized BGG shape and the character comparison with the dual de Rham
//! complex, with a CSV character table.

use qpv::bgg::{bgg_shape, character_csv, dual_derham_matches_bgg, euler_check, gv_character};
use qpv::cartan::{build_root_datum, parabolic, Series};
use qpv::decalculus::build_calculus;

pub fn main() {
    let par = parabolic(&build_root_datum(Series::A, 3).unwrap(), 2).unwrap();
    let shape = bgg_shape(&par).unwrap();
    println!("{} BGG shape {:?}", par.label(), shape.profile());
    for (k, level) in shape.degrees.iter().enumerate() {
        for v in level {
            println!("  degree {k}: w = {:?}, w.0 = {:?}", v.word, v.dot_weight);
        }
    }

    let cp = build_calculus(&par).unwrap();
    for k in 0..=cp.n() {
        let c = dual_derham_matches_bgg(&cp, &shape, k, 3).unwrap();
        println!("form degree {k}: characters match {}, leading dimension {}", c.matches, c.leading_dim);
    }
    println!("Euler: {:?}", euler_check(&par, &shape, 6).unwrap());

    let gv = gv_character(&par, &shape.degrees[1][0].dot_weight, 2).unwrap();
    print!("{}", character_csv(&gv.graded_char).unwrap());
}
