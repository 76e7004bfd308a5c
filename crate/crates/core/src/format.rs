//! Number formatting shared by the CLI and reports.

/// Formats with 12 significant digits, dropping trailing zeros, switching to
/// exponent notation outside `1e-5 ..= 1e12`.
pub fn significant(v: f64) -> String {
    const DIGITS: i32 = 12;
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..DIGITS).contains(&exp) {
        let s = format!("{:.*e}", (DIGITS - 1) as usize, v);
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{}", trim_zeros(mantissa), e);
    }
    let decimals = (DIGITS - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
