/// Plain decimal with `digits` significant digits, trailing zeros removed.
///
/// Never uses exponent notation and never depends on locale.
pub fn sig_digits(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    // round in scientific form first so the digit count is exact
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let value: f64 = format!("{mantissa}e{exp}").parse().unwrap();
    let mut s = format!("{value:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Twelve significant digits, the precision used by every CSV writer.
pub fn csv_num(x: f64) -> String {
    sig_digits(x, 12)
}
