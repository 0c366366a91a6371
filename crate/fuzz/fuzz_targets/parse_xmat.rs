#![no_main]

use crossmat::io::{parse_xmat, serialize_xmat};
use crossmat::scalar::Scalar;
use libfuzzer_sys::fuzz_target;
use num_complex::Complex64;

fn exercise<T: Scalar>(text: &str) {
    if let Ok(x) = parse_xmat::<T>(text) {
        let again = parse_xmat::<T>(&serialize_xmat(&x)).expect("serialized form re-parses");
        // NaN entries never compare equal, so the round trip is only
        // checkable when every entry is finite.
        let finite = x.diag().iter().chain(x.anti().iter()).all(|v| v.is_finite());
        if finite {
            assert_eq!(again, x, "round trip changed the matrix");
        }
    }
}

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        exercise::<f64>(text);
        exercise::<Complex64>(text);
    }
});
