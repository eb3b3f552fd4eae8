#![no_main]

use libfuzzer_sys::fuzz_target;
use num::Signed;
use p2coh::exceptional::{epsilon, DyadicIndex};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(idx) = s.parse::<DyadicIndex>() {
            let again: DyadicIndex = idx.to_string().parse().unwrap();
            assert_eq!(idx, again);
            // Evaluate the slope only for small indices: ranks grow doubly
            // exponentially with the order.
            if idx.order() <= 8 && idx.numerator().abs() <= num::BigInt::from(4096) {
                let slope = epsilon(&idx);
                assert_eq!(slope.index(), &again);
                assert!(slope.disc() < &p2coh::quadratic::rat(1, 2));
            }
        }
    }
});
