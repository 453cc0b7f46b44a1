//! Every example runs to completion.

macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        #[path = $file]
        mod $name;

        #[test]
        fn $name() {
            $name::main();
        }
    };
}

example!(root_data, "../examples/root_data.rs");
example!(weyl_bruhat, "../examples/weyl_bruhat.rs");
example!(weight_modules, "../examples/weight_modules.rs");
example!(braiding_spectrum, "../examples/braiding_spectrum.rs");
example!(quadratic_algebra, "../examples/quadratic_algebra.rs");
example!(de_rham, "../examples/de_rham.rs");
example!(bgg_characters, "../examples/bgg_characters.rs");
example!(verify_report, "../examples/verify_report.rs");
