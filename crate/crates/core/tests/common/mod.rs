//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls the scanning code it is compared against.

#![allow(dead_code)]

use num_bigint::BigInt;
use qcatalan::IntPoly;

/// Tries `t = 0, 1, 2, ...` and tests every `k` in the window directly.
pub fn brute_min_logconcave_t(p: &IntPoly) -> Option<usize> {
    let c = p.coeffs();
    let deg = c.len().checked_sub(1)?;
    let mut t = 0;
    while 2 * t < deg {
        let window_ok = (t + 1..deg.saturating_sub(t))
            .all(|k| &c[k] * &c[k] >= &c[k + 1] * &c[k - 1]);
        if window_ok {
            return Some(t);
        }
        t += 1;
    }
    None
}

/// Unimodal iff the sequence is nondecreasing up to some maximum position
/// and nonincreasing after it; tries every peak position.
pub fn brute_unimodal(seq: &[BigInt]) -> bool {
    (0..seq.len().max(1)).any(|peak| {
        seq[..=peak.min(seq.len().saturating_sub(1))]
            .windows(2)
            .all(|w| w[0] <= w[1])
            && seq[peak.min(seq.len().saturating_sub(1))..]
                .windows(2)
                .all(|w| w[0] >= w[1])
    })
}

/// `[n]!` by repeated schoolbook multiplication.
pub fn q_factorial(n: u32) -> IntPoly {
    (1..=n).fold(IntPoly::one(), |acc, k| {
        qcatalan::polyq::poly_mul(&acc, &qcatalan::polyq::qint(k).unwrap())
    })
}

/// `C_n(q) = [2n]! / ([n]! [n+1]!)` using only convolution and long division.
pub fn naive_q_catalan(n: u32) -> IntPoly {
    let den = qcatalan::polyq::poly_mul(&q_factorial(n), &q_factorial(n + 1));
    qcatalan::polyq::poly_div_exact(&q_factorial(2 * n), &den).unwrap()
}
