//! Machine-readable report emission. Numbers are serialized with 17
//! significant digits so emitted files are byte-deterministic and every
//! `slack` cell can be recomputed from its row.

use crate::inequality::{BoundReport, BoundsMeta};

/// Output encoding for [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Formats a float with 17 significant digits (scientific notation).
pub(crate) fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x)
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        fmt17(x)
    } else {
        "null".to_string()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn bounds_json(bounds: &BoundsMeta) -> String {
    match bounds {
        BoundsMeta::DerivativeRange { lo, hi, source } => format!(
            "{{\"kind\":\"derivative_range\",\"lo\":{},\"hi\":{},\"source\":{}}}",
            json_number(*lo),
            json_number(*hi),
            json_string(source.as_str())
        ),
        BoundsMeta::SupBound { bound, source } => format!(
            "{{\"kind\":\"sup_bound\",\"bound\":{},\"source\":{}}}",
            json_number(*bound),
            json_string(source.as_str())
        ),
        BoundsMeta::PairRanges {
            f_lo,
            f_hi,
            g_lo,
            g_hi,
        } => format!(
            "{{\"kind\":\"pair_ranges\",\"f_lo\":{},\"f_hi\":{},\"g_lo\":{},\"g_hi\":{}}}",
            json_number(*f_lo),
            json_number(*f_hi),
            json_number(*g_lo),
            json_number(*g_hi)
        ),
        BoundsMeta::None => "{\"kind\":\"none\"}".to_string(),
    }
}

fn report_json(r: &BoundReport) -> String {
    let t = match r.t {
        Some(t) => json_number(t),
        None => "null".to_string(),
    };
    let extra: Vec<String> = r
        .inputs
        .extra
        .iter()
        .map(|(k, v)| format!("{}:{}", json_string(k), json_number(*v)))
        .collect();
    format!(
        "{{\"name\":{},\"t\":{},\"lhs\":{},\"rhs\":{},\"slack\":{},\"holds\":{},\
         \"tol_check\":{},\"inputs\":{{\"scale\":{},\"function\":{},\"bounds\":{},\
         \"extra\":{{{}}}}}}}",
        json_string(&r.name),
        t,
        json_number(r.lhs),
        json_number(r.rhs),
        json_number(r.slack),
        r.holds,
        json_number(r.tol_check),
        json_string(&r.inputs.scale),
        json_string(&r.inputs.function),
        bounds_json(&r.inputs.bounds),
        extra.join(",")
    )
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Serializes reports as a JSON array (all fields) or as CSV with the header
/// `name,t,lhs,rhs,slack,holds`.
pub fn emit_report(reports: &[BoundReport], format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut out = String::from("[\n");
            for (i, r) in reports.iter().enumerate() {
                out.push_str("  ");
                out.push_str(&report_json(r));
                if i + 1 < reports.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str("]\n");
            out.into_bytes()
        }
        ReportFormat::Csv => {
            let mut out = String::from("name,t,lhs,rhs,slack,holds\n");
            for r in reports {
                let t = r.t.map(fmt17).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    csv_field(&r.name),
                    t,
                    fmt17(r.lhs),
                    fmt17(r.rhs),
                    fmt17(r.slack),
                    r.holds
                ));
            }
            out.into_bytes()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{DeltaFn, QuadratureConfig};
    use crate::inequality::ostrowski_check;
    use crate::scale::TimeScale;

    fn sample_report() -> BoundReport {
        let ts = TimeScale::integers(0, 4).unwrap();
        let sq = |t: f64| t * t;
        let f = DeltaFn::numeric(&sq).named("t^2");
        ostrowski_check(&ts, &f, 2.0, &QuadratureConfig::default()).unwrap()
    }

    #[test]
    fn empty_csv_is_header_only() {
        let bytes = emit_report(&[], ReportFormat::Csv);
        assert_eq!(bytes, b"name,t,lhs,rhs,slack,holds\n");
    }

    #[test]
    fn json_carries_holds_flag() {
        let bytes = emit_report(&[sample_report()], ReportFormat::Json);
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.contains("\"holds\":true"), "{text}");
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed[0]["name"], "ostrowski");
        assert_eq!(parsed[0]["inputs"]["function"], "t^2");
    }

    #[test]
    fn csv_slack_is_recomputable() {
        let report = sample_report();
        let bytes = emit_report(&[report], ReportFormat::Csv);
        let text = String::from_utf8(bytes).unwrap();
        let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        let lhs: f64 = row[2].parse().unwrap();
        let rhs: f64 = row[3].parse().unwrap();
        let slack: f64 = row[4].parse().unwrap();
        assert_eq!(slack, rhs - lhs);
    }

    #[test]
    fn seventeen_digit_round_trip() {
        for x in [1.0 / 3.0, 4.0 / 3.0, 1e-300, -2.25, 0.1 + 0.2] {
            let s = fmt17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }
}
