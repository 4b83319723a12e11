//! Measurement protocol: morph a normalized pair over an `α` grid, measure every
//! intermediate shape, and summarize the ratios to the linear ideal.

mod csv_io;
mod generate;
mod manifest;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::morph::{Align, Method, MorphParams, Morpher, Scale, DEFAULT_PHI};
use crate::shape::{measure, DEFAULT_MIN_FEATURE_AREA};

pub use csv_io::{emit_records_csv, emit_summary_csv, parse_records_csv, parse_summary_csv, RECORDS_HEADER, SUMMARY_HEADER};
pub use generate::{generate_comb_pair, generate_random_pair, generate_squares_pair};
pub use manifest::{parse_manifest, ManifestEntry};

/// Grid step of the experiments.
pub const DEFAULT_ALPHA_STEP: f64 = 0.125;

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub pair_id: String,
    pub method: Method,
    pub alpha: f64,
    pub area: f64,
    pub perimeter: f64,
    pub components: usize,
    pub holes: usize,
    /// `area / ((1−α)·area(A) + α·area(B))`.
    pub area_ratio: f64,
    pub perimeter_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    AreaRatio,
    PerimeterRatio,
    Components,
    Holes,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [Quantity::AreaRatio, Quantity::PerimeterRatio, Quantity::Components, Quantity::Holes];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::AreaRatio => "area_ratio",
            Quantity::PerimeterRatio => "perimeter_ratio",
            Quantity::Components => "components",
            Quantity::Holes => "holes",
        }
    }

    pub fn parse(s: &str) -> Option<Quantity> {
        Quantity::ALL.into_iter().find(|q| q.name() == s)
    }

    /// Topology counts leave out the endpoints, which are the inputs themselves.
    pub fn includes_endpoints(self) -> bool {
        matches!(self, Quantity::AreaRatio | Quantity::PerimeterRatio)
    }

    fn of(self, r: &MeasurementRecord) -> f64 {
        match self {
            Quantity::AreaRatio => r.area_ratio,
            Quantity::PerimeterRatio => r.perimeter_ratio,
            Quantity::Components => r.components as f64,
            Quantity::Holes => r.holes as f64,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub category: String,
    pub method: Method,
    pub quantity: Quantity,
    pub mean: f64,
    /// Population standard deviation.
    pub stddev: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub methods: Vec<Method>,
    pub alpha_step: f64,
    pub phi: f64,
    pub filter: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            methods: Method::ALL.to_vec(),
            alpha_step: DEFAULT_ALPHA_STEP,
            phi: DEFAULT_PHI,
            filter: DEFAULT_MIN_FEATURE_AREA,
        }
    }
}

impl GridConfig {
    /// `0, step, 2·step, …, 1`; the step must divide 1.
    pub fn alphas(&self) -> Result<Vec<f64>> {
        alpha_grid(self.alpha_step)
    }
}

pub fn alpha_grid(step: f64) -> Result<Vec<f64>> {
    let bad = Error::Parameter { name: "alpha_step", value: step };
    if !(step > 0.0 && step <= 1.0) {
        return Err(bad);
    }
    let n = (1.0 / step).round();
    if (n * step - 1.0).abs() > 1e-9 {
        return Err(bad);
    }
    let n = n as usize;
    Ok((0..=n).map(|i| i as f64 / n as f64).collect())
}

/// One record per `(method, α)`, ordered by method then `α`.
pub fn run_grid(pair_id: &str, morpher: &Morpher, cfg: &GridConfig, exec: Execution) -> Result<Vec<MeasurementRecord>> {
    if cfg.methods.is_empty() {
        return Err(Error::InvalidGeometry("no morph methods requested".into()));
    }
    let alphas = cfg.alphas()?;
    let pair = morpher.pair();
    let (ma, mb) = (measure(&pair.a, cfg.filter), measure(&pair.b, cfg.filter));
    let jobs: Vec<(Method, f64)> = cfg.methods.iter().flat_map(|&m| alphas.iter().map(move |&a| (m, a))).collect();
    exec.map(&jobs, |&(method, alpha)| {
        let r = morpher.morph(method, alpha, cfg.phi).map_err(|e| Error::Morph {
            method: method.name(),
            alpha,
            source: Box::new(e),
        })?;
        let m = measure(&r.shape, cfg.filter);
        let ideal_area = (1.0 - alpha) * ma.area + alpha * mb.area;
        let ideal_perimeter = (1.0 - alpha) * ma.perimeter + alpha * mb.perimeter;
        Ok(MeasurementRecord {
            pair_id: pair_id.to_string(),
            method,
            alpha,
            area: m.area,
            perimeter: m.perimeter,
            components: m.components,
            holes: m.holes,
            area_ratio: m.area / ideal_area,
            perimeter_ratio: m.perimeter / ideal_perimeter,
        })
    })
    .into_iter()
    .collect()
}

/// Mean and population standard deviation per `(category, method, quantity)`.
/// Pairs missing from `categories` fall in the category `"all"`.
pub fn aggregate(records: &[MeasurementRecord], categories: &HashMap<String, String>) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::InvalidGeometry("no records to aggregate".into()));
    }
    let mut groups: BTreeMap<(String, Method, Quantity), Vec<f64>> = BTreeMap::new();
    for r in records {
        let category = categories.get(&r.pair_id).cloned().unwrap_or_else(|| "all".to_string());
        let endpoint = r.alpha == 0.0 || r.alpha == 1.0;
        for q in Quantity::ALL {
            if endpoint && !q.includes_endpoints() {
                continue;
            }
            groups.entry((category.clone(), r.method, q)).or_default().push(q.of(r));
        }
    }
    Ok(groups
        .into_iter()
        .map(|((category, method, quantity), xs)| {
            let n = xs.len() as f64;
            let mean = xs.iter().sum::<f64>() / n;
            let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
            SummaryRow { category, method, quantity, mean, stddev: var.sqrt() }
        })
        .collect())
}

/// How the batch runner normalizes pairs and samples the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchConfig {
    pub grid: GridConfig,
    pub params: MorphParams,
    pub align: Align,
    pub scale: Scale,
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig { grid: GridConfig::default(), params: MorphParams::default(), align: Align::Centroid, scale: Scale::UnitArea }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BatchOutput {
    /// Sorted by `(pair, method, α)`.
    pub records: Vec<MeasurementRecord>,
    pub summary: Vec<SummaryRow>,
    pub failures: Vec<(String, Error)>,
}

/// Runs the grid on every entry, pairs in parallel; failing pairs are collected
/// in `failures` and skipped.
pub fn run_batch(entries: &[ManifestEntry], cfg: &BatchConfig, exec: Execution) -> BatchOutput {
    let results = exec.map(entries, |e| {
        let (a, b) = e.load()?;
        let morpher = Morpher::new(&a, &b, cfg.align, cfg.scale, cfg.params, exec)?;
        run_grid(&e.pair_id, &morpher, &cfg.grid, exec)
    });
    let mut out = BatchOutput::default();
    for (e, r) in entries.iter().zip(results) {
        match r {
            Ok(recs) => out.records.extend(recs),
            Err(err) => out.failures.push((e.pair_id.clone(), err)),
        }
    }
    sort_records(&mut out.records);
    let categories = entries.iter().map(|e| (e.pair_id.clone(), e.category.clone())).collect();
    out.summary = aggregate(&out.records, &categories).unwrap_or_default();
    out
}

/// Sort key of the CSV output: pair, method name, `α`.
pub fn sort_records(records: &mut [MeasurementRecord]) {
    records.sort_by(|x, y| {
        (x.pair_id.as_str(), x.method.name())
            .cmp(&(y.pair_id.as_str(), y.method.name()))
            .then(x.alpha.total_cmp(&y.alpha))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::Shape;

    fn record(pair: &str, method: Method, alpha: f64, area_ratio: f64, components: usize) -> MeasurementRecord {
        MeasurementRecord {
            pair_id: pair.into(),
            method,
            alpha,
            area: area_ratio,
            perimeter: 4.0,
            components,
            holes: 0,
            area_ratio,
            perimeter_ratio: 1.0,
        }
    }

    #[test]
    fn grid_values() {
        assert_eq!(alpha_grid(0.5).unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(alpha_grid(0.125).unwrap().len(), 9);
        assert!(alpha_grid(0.3).is_err());
        assert!(alpha_grid(0.0).is_err());
    }

    #[test]
    fn identical_pair_has_unit_ratios() {
        let a = Shape::rect(0.0, 0.0, 1.0, 1.0);
        let m = Morpher::raw(&a, &a, MorphParams::default()).unwrap();
        let recs = run_grid("same", &m, &GridConfig::default(), Execution::Sequential).unwrap();
        assert_eq!(recs.len(), 27);
        for r in &recs {
            assert!((r.area_ratio - 1.0).abs() < 1e-9 && (r.perimeter_ratio - 1.0).abs() < 1e-9, "{r:?}");
            assert_eq!((r.components, r.holes), (1, 0));
        }
    }

    #[test]
    fn squares_grid() {
        let (a, b) = generate_squares_pair(1.0).unwrap();
        let m = Morpher::raw(&a, &b, MorphParams::default()).unwrap();
        let cfg = GridConfig { methods: vec![Method::Voronoi, Method::Dilation], alpha_step: 0.5, ..GridConfig::default() };
        let recs = run_grid("sq", &m, &cfg, Execution::Parallel).unwrap();
        let alphas: Vec<f64> = recs.iter().filter(|r| r.method == Method::Voronoi).map(|r| r.alpha).collect();
        assert_eq!(alphas, vec![0.0, 0.5, 1.0]);
        let v = recs.iter().find(|r| r.method == Method::Voronoi && r.alpha == 0.5).unwrap();
        assert!((v.area - 1.0).abs() < 1e-9);
        let d = recs.iter().find(|r| r.method == Method::Dilation && r.alpha == 0.5).unwrap();
        assert!(d.area_ratio > 1.0);
        for r in recs.iter().filter(|r| r.alpha == 0.0 || r.alpha == 1.0) {
            assert!((r.area_ratio - 1.0).abs() < 1e-6 && (r.perimeter_ratio - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn aggregation_rules() {
        let recs = vec![
            record("p", Method::Voronoi, 0.0, 1.0, 1),
            record("p", Method::Voronoi, 0.5, 3.0, 3),
            record("p", Method::Voronoi, 1.0, 2.0, 1),
        ];
        let rows = aggregate(&recs, &HashMap::new()).unwrap();
        let get = |q| rows.iter().find(|r| r.quantity == q).unwrap();
        assert_eq!(get(Quantity::AreaRatio).mean, 2.0);
        assert!((get(Quantity::AreaRatio).stddev - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        // Endpoints excluded for topology.
        assert_eq!((get(Quantity::Components).mean, get(Quantity::Components).stddev), (3.0, 0.0));
        assert_eq!(get(Quantity::AreaRatio).category, "all");

        let two = vec![record("p", Method::Mixed, 0.25, 1.0, 1), record("q", Method::Mixed, 0.25, 3.0, 1)];
        let cats = HashMap::from([("p".to_string(), "x".to_string()), ("q".to_string(), "x".to_string())]);
        let rows = aggregate(&two, &cats).unwrap();
        let ar = rows.iter().find(|r| r.quantity == Quantity::AreaRatio).unwrap();
        assert_eq!((ar.mean, ar.stddev, ar.category.as_str()), (2.0, 1.0, "x"));
        assert!(aggregate(&[], &cats).is_err());
    }
}
