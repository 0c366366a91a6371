#![no_main]

use crossmat::io::parse_dense;
use crossmat::scalar::Scalar;
use crossmat::CrossMatrix;
use libfuzzer_sys::fuzz_target;
use num_complex::Complex64;

fn exercise<T: Scalar>(text: &str) {
    if let Ok(d) = parse_dense::<T>(text) {
        // Classification must never panic, and an accepted matrix must
        // reproduce its dense form exactly at tolerance zero.
        if let Ok(x) = CrossMatrix::from_dense(&d, <T::Real as Scalar>::from_f64(0.0)) {
            let back = x.to_dense();
            let finite = (0..d.rows())
                .flat_map(|i| (0..d.cols()).map(move |j| (i, j)))
                .all(|(i, j)| d[(i, j)].is_finite());
            if finite {
                assert_eq!(back, d, "accepted dense matrix changed under round trip");
            }
        }
    }
}

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        exercise::<f64>(text);
        exercise::<Complex64>(text);
    }
});
