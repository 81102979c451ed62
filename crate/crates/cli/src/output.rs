//! Deterministic text formatting for sweep records and reports.

use qpol::sweep::{CrossingResult, DiscriminationReport, Family, SweepRecord};

/// Fixed 12-significant-digit rendering; identical inputs always produce
/// identical bytes.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub const CSV_HEADER: &str = "param,concurrence,degree_pol,s_star,q_star";

pub fn records_to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(records.len() * 96 + CSV_HEADER.len() + 1);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sig12(r.param),
            sig12(r.concurrence),
            sig12(r.degree_pol),
            sig12(r.s_star),
            sig12(r.q_star)
        ));
    }
    out
}

pub fn records_to_json(records: &[SweepRecord]) -> String {
    let mut out = serde_json::to_string_pretty(records).expect("records serialize");
    out.push('\n');
    out
}

/// Location printed to 7 decimals as reported in the literature, with the
/// full-precision value alongside for comparison.
pub fn crossing_report(family: Family, crossing: &CrossingResult) -> String {
    format!(
        "family: {}\ncrossing: {:.7}\ncrossing_full: {}\nresidual: {:.3e}\nbracket: [{}, {}]\n",
        family_name(family),
        crossing.location,
        sig12(crossing.location),
        crossing.residual,
        sig12(crossing.bracket.0),
        sig12(crossing.bracket.1)
    )
}

pub fn discrimination_text(report: &DiscriminationReport) -> String {
    let xi = match report.xi_qcb {
        Some(v) => sig12(v),
        None => "infinite".to_string(),
    };
    let mut out = format!(
        "q_star: {}\ns_star: {}\nxi_qcb: {}\n",
        sig12(report.q_star),
        sig12(report.s_star),
        xi
    );
    for record in &report.copies {
        out.push_str(&format!(
            "P_min({}): {}   bound({}): {}\n",
            record.copies,
            sig12(record.p_min),
            record.copies,
            sig12(record.chernoff_upper)
        ));
    }
    out
}

pub fn family_name(family: Family) -> &'static str {
    match family {
        Family::Werner => "werner",
        Family::XFamily => "x-family",
    }
}
