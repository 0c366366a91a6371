#![no_main]

use crossmat::io::{format_vector, parse_vector};
use crossmat::scalar::Scalar;
use libfuzzer_sys::fuzz_target;
use num_complex::Complex64;

fn exercise<T: Scalar>(text: &str) {
    if let Ok(v) = parse_vector::<T>(text) {
        let again = parse_vector::<T>(&format_vector(&v)).expect("formatted vector re-parses");
        if v.iter().all(|t| t.is_finite()) {
            assert_eq!(again, v, "round trip changed the vector");
        }
    }
}

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        exercise::<f64>(text);
        exercise::<Complex64>(text);
    }
});
