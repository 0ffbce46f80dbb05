//! Fixed-precision number output.

use ncqd::{ComplexMatrix, C64};

/// Digits for human-readable reports.
pub const REPORT_DIGITS: usize = 7;
/// Digits for CSV cells.
pub const CSV_DIGITS: usize = 9;

/// `x` to `digits` significant digits; fixed notation for moderate exponents,
/// scientific otherwise. Exact zero prints as `0`.
pub fn sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if exp < -4 || exp >= digits as i32 {
        sci
    } else {
        format!("{:.*}", (digits as i32 - 1 - exp) as usize, x)
    }
}

pub fn report(x: f64) -> String {
    sig(x, REPORT_DIGITS)
}

pub fn csv(x: f64) -> String {
    sig(x, CSV_DIGITS)
}

pub fn complex(z: C64) -> String {
    let im = sig(z.im.abs(), REPORT_DIGITS);
    let sign = if z.im.is_sign_negative() && z.im != 0.0 { '-' } else { '+' };
    format!("{}{sign}{im}i", report(z.re))
}

pub fn matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| complex(m[(i, j)])).collect();
        out.push_str("  ");
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
