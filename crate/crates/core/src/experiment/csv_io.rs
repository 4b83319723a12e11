use crate::error::{Error, Result};
use crate::experiment::{sort_records, MeasurementRecord, Quantity, SummaryRow};
use crate::morph::Method;

pub const RECORDS_HEADER: [&str; 9] =
    ["pair", "method", "alpha", "area", "perimeter", "components", "holes", "area_ratio", "perimeter_ratio"];
pub const SUMMARY_HEADER: [&str; 5] = ["category", "method", "quantity", "mean", "stddev"];

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    // Avoid "-0.000000".
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Csv(e.to_string()))
}

/// Records sorted by `(pair, method, α)`; reals with 6 decimals, counts as integers.
pub fn emit_records_csv(records: &[MeasurementRecord]) -> Result<String> {
    let mut sorted = records.to_vec();
    sort_records(&mut sorted);
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(RECORDS_HEADER)?;
    for r in &sorted {
        w.write_record([
            r.pair_id.clone(),
            r.method.name().to_string(),
            num(r.alpha),
            num(r.area),
            num(r.perimeter),
            r.components.to_string(),
            r.holes.to_string(),
            num(r.area_ratio),
            num(r.perimeter_ratio),
        ])?;
    }
    finish(w)
}

/// Summary rows sorted by `(category, method, quantity)`.
pub fn emit_summary_csv(rows: &[SummaryRow]) -> Result<String> {
    let mut sorted = rows.to_vec();
    sorted.sort_by(|x, y| {
        (x.category.as_str(), x.method.name(), x.quantity.name()).cmp(&(y.category.as_str(), y.method.name(), y.quantity.name()))
    });
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(SUMMARY_HEADER)?;
    for r in &sorted {
        w.write_record([r.category.clone(), r.method.name().to_string(), r.quantity.name().to_string(), num(r.mean), num(r.stddev)])?;
    }
    finish(w)
}

fn reader<'a>(text: &'a str, header: &[&str]) -> Result<csv::Reader<&'a [u8]>> {
    let mut rd = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let got: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if got != header {
        return Err(Error::Csv(format!("unexpected header {got:?}")));
    }
    Ok(rd)
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, name: &str) -> Result<T> {
    rec.get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Csv(format!("bad {name} field on line {}", rec.position().map_or(0, |p| p.line()))))
}

pub fn parse_records_csv(text: &str) -> Result<Vec<MeasurementRecord>> {
    let mut rd = reader(text, &RECORDS_HEADER)?;
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let method: Method = rec[1].parse().map_err(|_| Error::Csv(format!("bad method '{}'", &rec[1])))?;
        out.push(MeasurementRecord {
            pair_id: rec[0].to_string(),
            method,
            alpha: field(&rec, 2, "alpha")?,
            area: field(&rec, 3, "area")?,
            perimeter: field(&rec, 4, "perimeter")?,
            components: field(&rec, 5, "components")?,
            holes: field(&rec, 6, "holes")?,
            area_ratio: field(&rec, 7, "area_ratio")?,
            perimeter_ratio: field(&rec, 8, "perimeter_ratio")?,
        });
    }
    Ok(out)
}

pub fn parse_summary_csv(text: &str) -> Result<Vec<SummaryRow>> {
    let mut rd = reader(text, &SUMMARY_HEADER)?;
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let method: Method = rec[1].parse().map_err(|_| Error::Csv(format!("bad method '{}'", &rec[1])))?;
        let quantity = Quantity::parse(&rec[2]).ok_or_else(|| Error::Csv(format!("bad quantity '{}'", &rec[2])))?;
        out.push(SummaryRow {
            category: rec[0].to_string(),
            method,
            quantity,
            mean: field(&rec, 3, "mean")?,
            stddev: field(&rec, 4, "stddev")?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(pair: &str, method: Method, alpha: f64) -> MeasurementRecord {
        MeasurementRecord {
            pair_id: pair.into(),
            method,
            alpha,
            area: 1.0 / 3.0,
            perimeter: 4.0,
            components: 2,
            holes: 1,
            area_ratio: 0.9999999,
            perimeter_ratio: 1.25,
        }
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(emit_records_csv(&[]).unwrap(), RECORDS_HEADER.join(",") + "\n");
        assert_eq!(emit_summary_csv(&[]).unwrap(), "category,method,quantity,mean,stddev\n");
    }

    #[test]
    fn one_record_two_lines() {
        let s = emit_records_csv(&[rec("p", Method::Voronoi, 0.125)]).unwrap();
        assert_eq!(s.lines().count(), 2);
        assert_eq!(s.lines().nth(1).unwrap(), "p,voronoi,0.125000,0.333333,4.000000,2,1,1.000000,1.250000");
    }

    #[test]
    fn sorted_and_round_trips() {
        let recs = vec![rec("b", Method::Voronoi, 0.5), rec("a", Method::Voronoi, 0.5), rec("a", Method::Dilation, 1.0), rec("a", Method::Dilation, 0.0)];
        let s = emit_records_csv(&recs).unwrap();
        let back = parse_records_csv(&s).unwrap();
        let keys: Vec<(String, Method, f64)> = back.iter().map(|r| (r.pair_id.clone(), r.method, r.alpha)).collect();
        assert_eq!(
            keys,
            vec![("a".into(), Method::Dilation, 0.0), ("a".into(), Method::Dilation, 1.0), ("a".into(), Method::Voronoi, 0.5), ("b".into(), Method::Voronoi, 0.5)]
        );
        // Lossless at the printed precision.
        assert_eq!(emit_records_csv(&back).unwrap(), s);

        let rows = vec![SummaryRow { category: "c".into(), method: Method::Mixed, quantity: Quantity::Holes, mean: 0.5, stddev: 0.25 }];
        let s = emit_summary_csv(&rows).unwrap();
        assert_eq!(parse_summary_csv(&s).unwrap(), rows);
        assert!(parse_summary_csv("x,y\n").is_err());
    }
}
