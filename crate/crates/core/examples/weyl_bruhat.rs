//! Minimal coset representatives, their Bruhat graph and BGG sign assignments.

use qpv::cartan::{build_root_datum, parabolic, Series};
use qpv::weyl::{
    bruhat_graph, check_square_products, gauge_between, generate, length_profile, random_sign_assignment,
    sign_assignment, DEFAULT_CAP,
};

pub fn main() {
    let par = parabolic(&build_root_datum(Series::A, 3).unwrap(), 2).unwrap();
    let group = generate(&par.base, DEFAULT_CAP).unwrap();
    println!("|W(A3)| = {}, longest element {}", group.len(), group.word_string(group.longest()));

    let reps = group.minimal_coset_reps(&par.levi());
    println!("W^S profile {:?}", length_profile(&group, &reps));
    for &w in &reps {
        println!("  {:>8}  w.0 = {:?}", group.word_string(w), group.affine_action(w, &[0, 0, 0]));
    }

    // on the whole group every length-2 interval is a square
    let all: Vec<usize> = (0..group.len()).collect();
    let full = bruhat_graph(&group, &all);
    let squares = full.squares(&group).unwrap();
    let eps = sign_assignment(&full, &squares).unwrap();
    let other = random_sign_assignment(&full, &squares, 42).unwrap();
    println!(
        "W: {} edges, {} squares, signs anticommute: {}, random solution gauge equivalent: {}",
        full.edges.len(),
        squares.len(),
        check_square_products(&squares, &eps),
        gauge_between(&full, &eps, &other).is_some()
    );

    // on W^S some length-2 intervals are chains
    let g = bruhat_graph(&group, &reps);
    let (sq, chains) = g.squares_allowing_chains(&group);
    println!("W^S: {} edges, {} squares, {} single-intermediate intervals", g.edges.len(), sq.len(), chains.len());
    let signs = sign_assignment(&g, &sq).unwrap();
    println!("graph JSON: {}", g.to_json(&group, Some(&signs)));
}
