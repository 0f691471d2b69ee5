#![no_main]

use finsupp::notation::{default_variables, format_monomial, parse_generators, parse_monomial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for dim in 2..=4 {
        let vars = default_variables(dim);
        if let Ok(e) = parse_monomial(text, &vars) {
            let printed = format_monomial(&e, &vars);
            assert_eq!(parse_monomial(&printed, &vars).unwrap(), e);
        }
        let _ = parse_generators(text, &vars);
    }
});
