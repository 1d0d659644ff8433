//! Deterministic plain-text rendering: numbers at 6 significant digits for
//! CSV, full precision for JSON.

use std::io::Write;
use std::path::Path;

use crate::AppError;

/// Format with 6 significant digits; fixed notation inside
/// [1e-4, 1e6), scientific outside.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..6).contains(&magnitude) {
        let decimals = (5 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

/// `fmt6` with trailing zeros trimmed; for labels like grid multipliers.
pub fn fmt_trim(x: f64) -> String {
    let s = fmt6(x);
    if s.contains('.') && !s.contains('e') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Write the finished output to stdout or the requested file.
pub fn emit(output: Option<&Path>, content: &str) -> Result<(), AppError> {
    match output {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| AppError::Data(format!("cannot write to stdout: {e}")))
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| AppError::Data(format!("cannot write {}: {e}", path.display()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt6(0.0), "0");
        assert_eq!(fmt6(1.0), "1.00000");
        assert_eq!(fmt6(22.58925), "22.5892"); // nearest f64 sits below the tie
        assert_eq!(fmt6(812.9258802), "812.926");
        assert_eq!(fmt6(0.00284945), "0.00284945");
        assert_eq!(fmt6(2.7960608891e-5), "2.79606e-5");
        assert_eq!(fmt6(-73.58715250451804), "-73.5872");
        assert_eq!(fmt6(1.00019325e14), "1.00019e14");
    }

    #[test]
    fn trimmed_labels() {
        assert_eq!(fmt_trim(1.0), "1");
        assert_eq!(fmt_trim(7.5), "7.5");
        assert_eq!(fmt_trim(0.04), "0.04");
    }
}
