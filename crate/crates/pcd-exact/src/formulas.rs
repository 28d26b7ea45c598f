//! Raw closed forms for `p_n(U, r, c)` with `c <= 1/2`.
//!
//! Powers are regrouped so every base has magnitude at most about one on the
//! region where the form is used; the large factors of the printed forms
//! (`(r-1)^n`, `r^n`, ...) never appear on their own.

/// `b^e` with the sign taken from the parity of `e`. Large exponents go
/// through `exp(e ln|b|)`.
pub fn pw(b: f64, e: i64) -> f64 {
    if e == 0 {
        return 1.0;
    }
    if b == 0.0 {
        return if e > 0 { 0.0 } else { f64::INFINITY };
    }
    let neg = b < 0.0 && e % 2 != 0;
    let mag = if e.unsigned_abs() <= 50 {
        b.abs().powi(e as i32)
    } else {
        (e as f64 * b.abs().ln()).exp()
    };
    if neg {
        -mag
    } else {
        mag
    }
}

fn nn(n: u32) -> i64 {
    n as i64
}

/// Region `r >= 1/c`.
pub fn pi1(n: u32, r: f64) -> f64 {
    let n = nn(n);
    2.0 * r / (r + 1.0).powi(2) * (pw(2.0 / r, n - 1) - pw((r - 1.0) / (r * r), n - 1))
}

/// Region `max(1/(1-c), (1-c)/c) <= r < 1/c`.
pub fn pi2(n: u32, r: f64, c: f64) -> f64 {
    let n = nn(n);
    let s = c * r - 1.0 + c;
    let inner = r * pw(c + 1.0 / r, n)
        - r * pw((1.0 - c) / r, n)
        - r * pw(s + 1.0 / r, n) / (r + 1.0)
        - (r * pw((r - 1.0) / (r * r), n - 1) + s * pw((r - 1.0) * s / r, n - 1)) / (r + 1.0);
    inner / (r + 1.0)
}

/// Region `(1-c)/c <= r < 1/(1-c)` (only nonempty for `c > (3-sqrt5)/2`).
pub fn pi3(n: u32, r: f64, c: f64) -> f64 {
    let n = nn(n);
    let s = c * r - 1.0 + c;
    let t = r - c * r - c;
    let q = (r + 1.0).powi(2);
    1.0 + pw(r - 1.0, n) / q
        - (s * pw((r - 1.0) * s / r, n - 1) + t * pw((r - 1.0) * t / r, n - 1)) / q
        - (pw(c * r, n) + pw(r * (1.0 - c), n) + r * pw(c / r, n) + r * pw((1.0 - c) / r, n)) / (r + 1.0)
}

/// Lowest region `1 <= r < min(1/(1-c), (1-c)/c)`, re-derived form.
pub fn pi4(n: u32, r: f64, c: f64) -> f64 {
    let n = nn(n);
    let q = (r + 1.0).powi(2);
    let u = 1.0 - c * (r + 1.0) / r;
    let v = 1.0 - c * (r + 1.0);
    1.0 + pw(r - 1.0, n) / q
        - (pw(c * r, n) + pw(r * (1.0 - c), n)) / (r + 1.0)
        - r * (pw(c / r, n) + pw((1.0 - c) / r, n)) / (r + 1.0)
        - r * u * pw((r - 1.0) * u, n - 1) / q
        + v * pw((r - 1.0) * v, n - 1) / q
}

/// The lowest-region form exactly as printed. Disagrees with the oracle;
/// kept only for comparison.
pub fn pi4_printed(n: u32, r: f64, c: f64) -> f64 {
    let n = nn(n);
    let q = (r + 1.0).powi(2);
    1.0 + pw(r - 1.0, n - 1) / q
        * pw(1.0 - c * r - c, n)
        * (r * r - pw(-1.0 / r, n - 1) * (r * r - 1.0))
        + pw(r - 1.0, n) / q * (1.0 - r * pw((r - c * r - c) / r, n))
        - (pw(c, n) + pw(1.0 - c, n)) * (pw(r, n) - pw(r, 1 - n)) / (r + 1.0)
}

/// `1/(1-c) <= r < (1-c)/c` with `r^2 c - r + 1 <= 0`.
pub fn theta3_low(n: u32, r: f64, c: f64) -> f64 {
    let n = nn(n);
    r / (r + 1.0) * (pw(c + 1.0 / r, n) - pw((1.0 - c) / r, n)) - pw(c, n)
}

/// `1/(1-c) <= r < (1-c)/c` with `r^2 c - r + 1 > 0`.
pub fn theta3_high(n: u32, r: f64, c: f64) -> f64 {
    let n = nn(n);
    let q = (r + 1.0).powi(2);
    let v = 1.0 - c * (r + 1.0);
    r / (r + 1.0) * (pw(c + 1.0 / r, n) - pw((1.0 - c) / r, n))
        - r / q * pw(c * (r + 1.0) - (r - 1.0) / r, n)
        - r / q * pw((r - 1.0) / (r * r), n - 1)
        + v * pw((r - 1.0) * v, n - 1) / q
}

/// Whether the upper piece of the third theta region applies.
pub fn theta3_is_high(r: f64, c: f64) -> bool {
    r * r * c - r + 1.0 > 0.0
}

pub fn theta3(n: u32, r: f64, c: f64) -> f64 {
    if theta3_is_high(r, c) {
        theta3_high(n, r, c)
    } else {
        theta3_low(n, r, c)
    }
}

/// The third theta form exactly as printed. Disagrees with the oracle.
pub fn theta3_printed(n: u32, r: f64, c: f64) -> f64 {
    let n = nn(n);
    let q = (r + 1.0).powi(2);
    r / q
        * (pw(r - 1.0, n - 1) * pw(1.0 - c * r - c, n) * (r + (r * r - 1.0) * pw(-1.0 / r, n))
            - pw((r - 1.0) / (r * r), n - 1)
            - pw((c * r * r - c + c * r + 1.0) / r, n)
            + (r + 1.0) * pw(r, -n) * (pw(1.0 + c * r, n) - pw(1.0 - c, n)))
}

/// `r = 2`, `c in [1/4, 1/3]`.
pub fn nu1(n: u32, c: f64) -> f64 {
    let n = nn(n);
    2.0 / 3.0 * pw(c + 0.5, n) - 8.0 / 9.0 * pw(0.25, n) - 2.0 / 3.0 * pw((1.0 - c) / 2.0, n)
        + pw(1.0 - 3.0 * c, n) / 9.0
        - 2.0 / 9.0 * pw(3.0 * c - 0.5, n)
}

/// `r = 2`, `c in (0, 1/4]`; the printed `nu1` does not hold there.
pub fn nu1_low(n: u32, c: f64) -> f64 {
    let n = nn(n);
    2.0 / 3.0 * (pw(c + 0.5, n) - pw((1.0 - c) / 2.0, n)) - pw(c, n)
}

/// `r = 2`, `c in (1/3, 1/2]`.
pub fn nu2(n: u32, c: f64) -> f64 {
    let n = nn(n);
    2.0 / 3.0 * pw(c + 0.5, n) - 8.0 / 9.0 * pw(0.25, n) - 2.0 / 3.0 * pw((1.0 - c) / 2.0, n)
        - 2.0 / 9.0 * pw((3.0 * c - 1.0) / 2.0, n)
        - 2.0 / 9.0 * pw(3.0 * c - 0.5, n)
}

/// `c = 1/2`, `1 <= r < 2`.
pub fn r_half_lower(n: u32, r: f64) -> f64 {
    let n = nn(n);
    1.0 - (pw(1.0 / (2.0 * r), n - 1) + r * pw(r / 2.0, n - 1)) / (r + 1.0)
        + pw(r - 1.0, n) / (r + 1.0).powi(2) * (1.0 - pw((r - 1.0) / (2.0 * r), n - 1))
}

/// `r = 2`, `c = 1/2`.
pub fn two_half(n: u32) -> f64 {
    4.0 / 9.0 - 16.0 / 9.0 * pw(0.25, nn(n))
}

/// The value displayed for `lim_{c->0} p_n(U, 2, c)`, read literally.
pub fn displayed_c0_limit(n: u32) -> f64 {
    let n = nn(n);
    1.0 / 9.0 - 2.0 / 9.0 * pw(-2.0, n) - 8.0 / 9.0 * pw(0.25, n)
}

/// `lim_{c->0}` of the printed `nu1`, which differs from the displayed value.
pub fn nu1_c0_limit(n: u32) -> f64 {
    let n = nn(n);
    1.0 / 9.0 - 2.0 / 9.0 * pw(-0.5, n) - 8.0 / 9.0 * pw(0.25, n)
}
