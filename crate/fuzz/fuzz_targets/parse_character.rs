#![no_main]

use libfuzzer_sys::fuzz_target;
use p2coh::chern::ChernCharacter;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = s.parse::<ChernCharacter>() {
            let again: ChernCharacter = v.to_string().parse().unwrap();
            assert_eq!(v, again);
            // Derived invariants must not panic on any accepted input.
            let _ = v.is_integral();
            let _ = v.chi();
            if !v.is_torsion() {
                let _ = v.mu();
                let _ = v.delta();
                let _ = v.c2();
                assert_eq!(v.dual().unwrap().dual().unwrap(), v);
            }
        }
    }
});
