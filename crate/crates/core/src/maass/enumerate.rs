//! The `(c, d)` pairs of the inner sum that survive truncation.

use num_complex::Complex64;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest positive `a` with `a·d ≡ 1 (mod c)`; `c ≥ 1`, `gcd(c, d) = 1`.
pub fn mod_inverse(d: i64, c: i64) -> i64 {
    assert!(c >= 1 && gcd(c, d) == 1, "mod_inverse needs c >= 1 and gcd(c, d) = 1");
    if c == 1 {
        return 1;
    }
    let (mut r0, mut r1) = (c, d.rem_euclid(c));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(c)
}

/// Coprime `(c, d)` with `c ≥ 1` and `√(m2y2/C) < |c z2 + d| < C/(m1y1)`,
/// ordered by `c`, then `d`.
pub fn enumerate_cd(cutoff: f64, m1y1: f64, m2y2: f64, z2: Complex64) -> Vec<(i64, i64)> {
    let lo = (m2y2 / cutoff).sqrt();
    let hi = cutoff / m1y1;
    let mut out = Vec::new();
    if !(lo < hi) || !(z2.im > 0.0) {
        return out;
    }
    let mut c = 1i64;
    while (c as f64) * z2.im < hi {
        let cf = c as f64;
        let half = (hi * hi - cf * cf * z2.im * z2.im).sqrt();
        let centre = -cf * z2.re;
        let d_lo = (centre - half).floor() as i64;
        let d_hi = (centre + half).ceil() as i64;
        for d in d_lo..=d_hi {
            if gcd(c, d) != 1 {
                continue;
            }
            let r = (cf * z2 + d as f64).norm();
            if lo < r && r < hi {
                out.push((c, d));
            }
        }
        c += 1;
    }
    out
}
