//! Number formatting, CSV rows and gnuplot scripts.

use std::fmt::Write as _;

use fcbound_core::bounds::BoundReport;

pub const CSV_HEADER: &str =
    "p,k,new_bound,guaranteed_j,gyarmati_bound,gyarmati_c,upper_bound,t_new_ns,t_gyarmati_ns";

/// C's `%.{sig}g`: `sig` significant digits, trailing zeros removed,
/// scientific notation outside `1e-4 <= |x| < 10^sig`.
pub fn format_g(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn g15(x: f64) -> String {
    format_g(x, 15)
}

/// One CSV data row (no trailing newline).
pub fn csv_row(r: &BoundReport, t_new_ns: u128, t_gyarmati_ns: u128) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.p,
        r.k,
        g15(r.new_bound),
        r.guaranteed_j,
        g15(r.gyarmati_bound),
        g15(r.gyarmati_c),
        g15(r.upper_bound),
        t_new_ns,
        t_gyarmati_ns
    )
}

/// Which grid axis varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    P,
    K,
}

impl Axis {
    fn column(self) -> u32 {
        match self {
            Axis::P => 1,
            Axis::K => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Axis::P => "p",
            Axis::K => "k",
        }
    }
}

/// A gnuplot script plotting `csv_name` (bounds, or the timing difference
/// for benchmark output) against the ranged axis; it renders `png_name`.
pub fn gnuplot_script(csv_name: &str, png_name: &str, axis: Axis, fixed: &str, timing: bool) -> String {
    let x = axis.column();
    let mut s = String::new();
    writeln!(s, "set terminal pngcairo size 900,600").unwrap();
    writeln!(s, "set output '{png_name}'").unwrap();
    writeln!(s, "set datafile separator ','").unwrap();
    writeln!(s, "set key autotitle columnhead top left").unwrap();
    writeln!(s, "set grid").unwrap();
    writeln!(s, "set xlabel '{}'", axis.label()).unwrap();
    if timing {
        writeln!(s, "set title 'evaluation time difference, {fixed}'").unwrap();
        writeln!(s, "set ylabel 't_new - t_gyarmati (s)'").unwrap();
        writeln!(s, "plot '{csv_name}' using {x}:(($8-$9)/1e9) with linespoints title 'time difference'")
            .unwrap();
    } else {
        writeln!(s, "set title 'family complexity lower bounds, {fixed}'").unwrap();
        writeln!(s, "set ylabel 'bound'").unwrap();
        writeln!(
            s,
            "plot '{csv_name}' using {x}:3 with lines title 'Lambert W bound', \\\n     '{csv_name}' using {x}:5 with lines title 'Gyarmati bound'"
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format_matches_c() {
        // reference strings from printf("%.15g")
        assert_eq!(g15(2.563160164447206), "2.56316016444721");
        assert_eq!(g15(0.5), "0.5");
        assert_eq!(g15(2.5), "2.5");
        assert_eq!(g15(3.0), "3");
        assert_eq!(g15(-0.701838369672064), "-0.701838369672064");
        assert_eq!(g15(1e20), "1e+20");
        assert_eq!(g15(123456789012345.0), "123456789012345");
        assert_eq!(g15(1234567890123456.0), "1.23456789012346e+15");
        assert_eq!(g15(0.0001), "0.0001");
        assert_eq!(g15(0.00001234), "1.234e-05");
        assert_eq!(g15(0.0), "0");
        assert_eq!(g15(f64::INFINITY), "inf");
        assert_eq!(format_g(99999.5, 5), "1e+05");
        assert_eq!(format_g(-1.5e-300, 3), "-1.5e-300");
    }

    #[test]
    fn gnuplot_mentions_columns() {
        let s = gnuplot_script("scan.csv", "scan.png", Axis::K, "p = 7", false);
        assert!(s.contains("using 2:3"));
        assert!(s.contains("using 2:5"));
        let s = gnuplot_script("b.csv", "b.png", Axis::P, "k = 1", true);
        assert!(s.contains("using 1:(($8-$9)/1e9)"));
    }
}
