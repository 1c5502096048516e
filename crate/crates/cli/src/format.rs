use serde_json::{json, Map, Value};

use exittime_core::report::{Discrepancy, Unavailable};
use exittime_core::verify::{Check, Status};
use exittime_core::{ExitTimeEstimate, MethodReport, NGramRadii, Point2};

pub const SCHEMA: u32 = 1;

/// Round to 12 significant digits; non-finite values become `null`.
pub fn num(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    json!(rounded)
}

/// CSV cell with 12 significant digits; empty for non-finite values.
pub fn cell(v: f64) -> String {
    if v.is_finite() {
        let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
        let a = rounded.abs();
        if a != 0.0 && !(1e-4..1e15).contains(&a) {
            format!("{rounded:e}")
        } else {
            format!("{rounded}")
        }
    } else {
        String::new()
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn point(p: Point2) -> Value {
    json!({"x": num(p.x), "y": num(p.y)})
}

fn with_schema(mut body: Map<String, Value>) -> String {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.append(&mut body);
    Value::Object(out).to_string()
}

fn estimate_json(e: &ExitTimeEstimate) -> Value {
    json!({"method": e.method.name(), "value": num(e.value), "error": num(e.error), "count": e.count})
}

fn unavailable_json(u: &Unavailable) -> Value {
    json!({"method": u.method.name(), "reason": u.reason})
}

fn discrepancy_json(d: &Discrepancy) -> Value {
    json!({
        "first": d.first.name(),
        "second": d.second.name(),
        "difference": num(d.difference),
        "allowed": num(d.allowed),
        "consistent": d.consistent,
    })
}

pub fn report_csv(r: &MethodReport) -> String {
    let mut s = String::from("method,value,error,count,note\n");
    for e in &r.estimates {
        s += &format!("{},{},{},{},\n", e.method.name(), cell(e.value), cell(e.error), e.count);
    }
    for u in &r.unavailable {
        s += &format!("{},,,,{}\n", u.method.name(), quote(&u.reason));
    }
    s
}

pub fn report_json(r: &MethodReport) -> String {
    let mut m = Map::new();
    m.insert("domain".into(), json!(r.domain.to_string()));
    m.insert("point".into(), point(r.point));
    m.insert("estimates".into(), r.estimates.iter().map(estimate_json).collect());
    m.insert("unavailable".into(), r.unavailable.iter().map(unavailable_json).collect());
    m.insert("discrepancies".into(), r.discrepancies.iter().map(discrepancy_json).collect());
    with_schema(m)
}

pub fn discrepancies_csv(r: &MethodReport) -> String {
    let mut s = String::from("first,second,difference,allowed,consistent\n");
    for d in &r.discrepancies {
        s += &format!(
            "{},{},{},{},{}\n",
            d.first.name(),
            d.second.name(),
            cell(d.difference),
            cell(d.allowed),
            d.consistent
        );
    }
    s
}

pub fn field_csv(rows: &[(f64, f64, Option<f64>)]) -> String {
    let mut s = String::from("x,y,u\n");
    for &(x, y, u) in rows {
        s += &format!("{},{},{}\n", cell(x), cell(y), u.map(cell).unwrap_or_default());
    }
    s
}

pub fn field_json(domain: &str, rows: &[(f64, f64, Option<f64>)]) -> String {
    let mut m = Map::new();
    m.insert("domain".into(), json!(domain));
    let pts: Vec<Value> = rows
        .iter()
        .map(|&(x, y, u)| json!({"x": num(x), "y": num(y), "u": u.map(num).unwrap_or(Value::Null)}))
        .collect();
    m.insert("points".into(), Value::Array(pts));
    with_schema(m)
}

const RADII_FIELDS: [&str; 5] = ["circumradius", "inradius", "inscribed_radius", "axis_vertex", "mid_vertex"];

fn radii_values(r: &NGramRadii) -> [f64; 5] {
    [r.circumradius, r.inradius, r.inscribed_radius, r.axis_vertex, r.mid_vertex]
}

pub fn radii_csv(r: &NGramRadii) -> String {
    let values: Vec<String> = radii_values(r).iter().map(|&v| cell(v)).collect();
    format!("{}\n{}\n", RADII_FIELDS.join(","), values.join(","))
}

pub fn radii_json(domain: &str, r: &NGramRadii) -> String {
    let mut m = Map::new();
    m.insert("domain".into(), json!(domain));
    for (k, v) in RADII_FIELDS.iter().zip(radii_values(r)) {
        m.insert((*k).into(), num(v));
    }
    with_schema(m)
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::KnownIssue => "known-issue",
    }
}

pub fn checks_csv(checks: &[Check]) -> String {
    let mut s = String::from("status,check,residual,tolerance,note\n");
    for c in checks {
        s += &format!(
            "{},{},{},{},{}\n",
            status_name(c.status),
            quote(&c.name),
            cell(c.residual),
            cell(c.tolerance),
            quote(c.note.as_deref().unwrap_or(""))
        );
    }
    s
}

pub fn checks_json(checks: &[Check]) -> String {
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "check": c.name,
                "status": status_name(c.status),
                "residual": num(c.residual),
                "tolerance": num(c.tolerance),
                "note": c.note,
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("passed".into(), json!(checks.iter().all(Check::passed)));
    m.insert("checks".into(), Value::Array(rows));
    with_schema(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits_round_trip() {
        for v in [std::f64::consts::PI, 1.0 / 3.0, 0.191_807_352_378_608_75, -2.5e-17, 1e300] {
            let printed = num(v).to_string();
            let back: f64 = printed.parse().unwrap();
            assert!(((back - v) / v).abs() < 5e-12, "{v} {printed}");
            let digits = printed.trim_start_matches('-').split(['e', 'E']).next().unwrap().replace('.', "");
            assert!(digits.trim_start_matches('0').len() <= 12, "{printed}");
        }
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(cell(f64::INFINITY), "");
    }
}
