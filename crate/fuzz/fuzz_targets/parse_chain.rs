#![no_main]

use finsupp::notation::{default_variables, format_chain, parse_chain};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let vars = default_variables(3);
    if let Ok(dirs) = parse_chain(text, &vars) {
        assert_eq!(parse_chain(&format_chain(&dirs, &vars), &vars).unwrap(), dirs);
    }
});
