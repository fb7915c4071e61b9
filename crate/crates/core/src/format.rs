//! Bit-stable text formatting for CSV and OBJ output.

/// Formats like C's `printf("%.17g", v)`: 17 significant digits, trailing
/// zeros dropped, exponent form outside `1e-4 <= |v| < 1e17`. Every finite
/// `f64` round-trips exactly through `str::parse`.
pub fn g17(v: f64) -> String {
    const PREC: i32 = 17;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (PREC - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PREC).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (PREC - 1 - exp) as usize, v);
        trim_zeros(&fixed).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Joins values with `,` using [`g17`].
pub fn csv_row(values: &[f64]) -> String {
    values.iter().map(|v| g17(*v)).collect::<Vec<_>>().join(",")
}
