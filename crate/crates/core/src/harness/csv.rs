use std::io::Write;

use super::{ClosedForm, SweepResult};
use crate::error::Result;

pub const CSV_HEADER: &str =
    "scheme,snr_db,trials,se_mean_bps_hz,se_stderr,pzf_bound_bps_hz,fczf_asymptotic_bps_hz";

pub const BOUND_HEADER: &str = "snr_db,pzf_bound_bps_hz,fczf_asymptotic_bps_hz";

/// Plain decimal rendering of `x` rounded to `digits` significant digits,
/// without exponent and without trailing zeros.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent form");
    let exponent: i64 = exponent.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digit_str: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    let point = exponent + 1;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digit_str);
    } else if point as usize >= digit_str.len() {
        out.push_str(&digit_str);
        out.extend(std::iter::repeat_n('0', point as usize - digit_str.len()));
    } else {
        out.push_str(&digit_str[..point as usize]);
        out.push('.');
        out.push_str(&digit_str[point as usize..]);
    }
    if out.contains('.') {
        let trimmed = out.trim_end_matches('0').trim_end_matches('.').len();
        out.truncate(trimmed);
    }
    out
}

fn num(x: f64) -> String {
    format_significant(x, 10)
}

/// Writes the sweep as CSV, rows sorted by (scheme label, SNR).
pub fn write_csv<W: Write>(result: &SweepResult, mut sink: W) -> Result<()> {
    writeln!(sink, "{CSV_HEADER}")?;
    let mut cells: Vec<_> = result.cells.iter().collect();
    cells.sort_by(|a, b| {
        a.scheme
            .to_string()
            .cmp(&b.scheme.to_string())
            .then(a.snr_db.total_cmp(&b.snr_db))
    });
    for cell in cells {
        let (bound, asymptotic) = match result.closed_form_at(cell.snr_db) {
            Some(cf) => (num(cf.pzf_bound), num(cf.fczf_asymptotic)),
            None => (String::new(), String::new()),
        };
        writeln!(
            sink,
            "{},{},{},{},{},{},{}",
            cell.scheme,
            num(cell.snr_db),
            cell.trials,
            num(cell.se_mean),
            num(cell.se_stderr),
            bound,
            asymptotic
        )?;
    }
    sink.flush()?;
    Ok(())
}

/// Closed-form rates per SNR point.
pub fn write_bound_csv<W: Write>(rows: &[ClosedForm], mut sink: W) -> Result<()> {
    writeln!(sink, "{BOUND_HEADER}")?;
    for row in rows {
        writeln!(
            sink,
            "{},{},{}",
            num(row.snr_db),
            num(row.pzf_bound),
            num(row.fczf_asymptotic)
        )?;
    }
    sink.flush()?;
    Ok(())
}
