#![no_main]

use libfuzzer_sys::fuzz_target;
use p2coh::quadratic::parse_rational;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(r) = parse_rational(s) {
            // Printing is canonical: reparsing is the identity.
            let again = parse_rational(&r.to_string()).unwrap();
            assert_eq!(r, again);
        }
    }
});
