#![no_main]

use libfuzzer_sys::fuzz_target;
use num::Signed;
use p2coh::kronecker::{general_hom_ext, KroneckerShape};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(shape) = s.parse::<KroneckerShape>() {
            let again: KroneckerShape = shape.to_string().parse().unwrap();
            assert_eq!(shape, again);
            // Exercise the decomposition machinery on small vectors.
            let big = num::BigInt::from(1 << 12);
            if shape.n <= big && shape.b <= big && shape.a <= big {
                let (hom, ext) = general_hom_ext(&shape, &shape).unwrap();
                assert!(!hom.is_negative() && !ext.is_negative());
            }
        }
    }
});
