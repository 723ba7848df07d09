use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::bounds::gap_percent;
use crate::error::{Error, Result};
use crate::io::sig9;
use crate::model::{objective::path_length, Instance, Scored};

/// One solver run on one instance.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunRecord {
    pub instance: String,
    pub seed: u64,
    pub method: String,
    pub nodes: usize,
    pub sprayers: usize,
    pub sprayer_travel: f64,
    pub tanker_travel: f64,
    pub refill_term: f64,
    pub service_term: f64,
    pub waiting_penalty: f64,
    pub objective: f64,
    pub lower_bound: Option<f64>,
    pub gap_percent: Option<f64>,
    pub construct_secs: f64,
    pub alns_secs: f64,
    pub phase3_secs: f64,
    pub total_secs: f64,
    pub refills: usize,
    pub feasible: bool,
    /// Total service time per sprayer.
    pub service_per_sprayer: Vec<f64>,
    /// Total travel time per sprayer.
    pub routing_per_sprayer: Vec<f64>,
}

const HEADER: [&str; 21] = [
    "instance",
    "seed",
    "method",
    "nodes",
    "sprayers",
    "sprayerTravel",
    "tankerTravel",
    "refillTerm",
    "serviceTerm",
    "waitingPenalty",
    "objective",
    "lowerBound",
    "gapPercent",
    "constructSecs",
    "alnsSecs",
    "phase3Secs",
    "totalSecs",
    "refills",
    "feasible",
    "servicePerSprayer",
    "routingPerSprayer",
];

impl RunRecord {
    /// Fills the objective, gap and per-sprayer columns from a solution;
    /// timings are left at zero.
    pub fn from_scored(
        instance_name: &str,
        seed: u64,
        method: &str,
        instance: &Instance,
        scored: &Scored,
        lower_bound: Option<f64>,
    ) -> RunRecord {
        let o = &scored.objective;
        let sol = &scored.solution;
        RunRecord {
            instance: instance_name.to_string(),
            seed,
            method: method.to_string(),
            nodes: instance.num_nodes(),
            sprayers: instance.num_sprayers(),
            sprayer_travel: o.sprayer_travel,
            tanker_travel: o.tanker_travel,
            refill_term: o.refill_term,
            service_term: o.service_term,
            waiting_penalty: o.waiting_penalty,
            objective: o.total(),
            lower_bound,
            gap_percent: lower_bound.map(|lb| gap_percent(o.total(), lb)),
            refills: sol.tanker_route.len(),
            feasible: scored.is_feasible(),
            service_per_sprayer: sol
                .routes
                .iter()
                .map(|r| r.iter().map(|&i| sol.service[i]).sum())
                .collect(),
            routing_per_sprayer: sol
                .routes
                .iter()
                .map(|r| path_length(instance, r))
                .collect(),
            ..Default::default()
        }
    }

    fn scalars(&self) -> [Option<f64>; 14] {
        [
            Some(self.sprayer_travel),
            Some(self.tanker_travel),
            Some(self.refill_term),
            Some(self.service_term),
            Some(self.waiting_penalty),
            Some(self.objective),
            self.lower_bound,
            self.gap_percent,
            Some(self.construct_secs),
            Some(self.alns_secs),
            Some(self.phase3_secs),
            Some(self.total_secs),
            Some(self.refills as f64),
            Some(if self.feasible { 1.0 } else { 0.0 }),
        ]
    }

    fn row(&self) -> Vec<String> {
        let mut r = vec![
            self.instance.clone(),
            self.seed.to_string(),
            self.method.clone(),
            self.nodes.to_string(),
            self.sprayers.to_string(),
        ];
        let s = self.scalars();
        r.extend(s[..12].iter().map(|v| num(*v)));
        r.push(self.refills.to_string());
        r.push(self.feasible.to_string());
        r.push(list(&self.service_per_sprayer));
        r.push(list(&self.routing_per_sprayer));
        r
    }
}

/// Mean, min and max of a group of records.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub method: String,
    pub count: usize,
    /// Per column of `RunRecord` scalars: (mean, min, max); `None` when any
    /// record lacks the value.
    pub stats: Vec<Option<(f64, f64, f64)>>,
    pub service_per_sprayer: Option<Vec<(f64, f64, f64)>>,
    pub routing_per_sprayer: Option<Vec<(f64, f64, f64)>>,
}

/// Groups records by method.
pub fn aggregate(records: &[RunRecord]) -> Vec<Aggregate> {
    let mut groups: BTreeMap<&str, Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(&r.method).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(method, rs)| {
            let cols = rs.iter().map(|r| r.scalars()).collect::<Vec<_>>();
            let stats = (0..14)
                .map(|c| {
                    cols.iter()
                        .map(|s| s[c])
                        .collect::<Option<Vec<f64>>>()
                        .map(|v| mmm(&v))
                })
                .collect();
            Aggregate {
                method: method.to_string(),
                count: rs.len(),
                stats,
                service_per_sprayer: per_sprayer(&rs, |r| &r.service_per_sprayer),
                routing_per_sprayer: per_sprayer(&rs, |r| &r.routing_per_sprayer),
            }
        })
        .collect()
}

fn per_sprayer(
    rs: &[&RunRecord],
    f: impl Fn(&RunRecord) -> &Vec<f64>,
) -> Option<Vec<(f64, f64, f64)>> {
    let k = f(rs[0]).len();
    if rs.iter().any(|r| f(r).len() != k) {
        return None;
    }
    Some(
        (0..k)
            .map(|j| mmm(&rs.iter().map(|r| f(r)[j]).collect::<Vec<_>>()))
            .collect(),
    )
}

fn mmm(v: &[f64]) -> (f64, f64, f64) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (mean, min, max)
}

/// Writes one row per record followed by `mean`, `min` and `max` rows for
/// each method. Aggregate rows carry the statistic in the instance column.
pub fn write_results(records: &[RunRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    w.write_record(HEADER).map_err(|e| csv_error(path, e))?;
    for r in records {
        w.write_record(r.row()).map_err(|e| csv_error(path, e))?;
    }
    for agg in aggregate(records) {
        for (which, name) in ["mean", "min", "max"].into_iter().enumerate() {
            let pick = |t: (f64, f64, f64)| [t.0, t.1, t.2][which];
            let mut row = vec![
                name.to_string(),
                String::new(),
                agg.method.clone(),
                String::new(),
                String::new(),
            ];
            row.extend(agg.stats.iter().map(|s| num(s.map(pick))));
            let lists = |l: &Option<Vec<(f64, f64, f64)>>| {
                l.as_ref()
                    .map(|v| list(&v.iter().map(|&t| pick(t)).collect::<Vec<_>>()))
                    .unwrap_or_default()
            };
            row.push(lists(&agg.service_per_sprayer));
            row.push(lists(&agg.routing_per_sprayer));
            w.write_record(row).map_err(|e| csv_error(path, e))?;
        }
    }
    w.flush().map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes any serializable rows, such as the search trace, as CSV.
pub fn write_trace<T: Serialize>(rows: &[T], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    for r in rows {
        w.serialize(r).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn num(v: Option<f64>) -> String {
    v.map(|x| sig9(x).to_string()).unwrap_or_default()
}

fn list(v: &[f64]) -> String {
    v.iter()
        .map(|&x| sig9(x).to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    Error::InvalidInput(format!("{}: {e}", path.display()))
}
