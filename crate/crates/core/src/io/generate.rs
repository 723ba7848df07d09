use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FleetParams, Instance, Node, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeClass {
    /// Up to 14 nodes on a small field; sized for the exact oracle.
    Tiny,
    Small,
    Medium,
    Large,
}

impl SizeClass {
    pub fn node_range(self) -> (usize, usize) {
        match self {
            SizeClass::Tiny => (1, 14),
            SizeClass::Small => (15, 25),
            SizeClass::Medium => (25, 40),
            SizeClass::Large => (41, 60),
        }
    }

    pub fn zone_radius(self) -> f64 {
        match self {
            SizeClass::Tiny | SizeClass::Small => 4.0,
            SizeClass::Medium => 4.9,
            SizeClass::Large => 5.6,
        }
    }

    pub fn parse(s: &str) -> Option<SizeClass> {
        match s {
            "tiny" => Some(SizeClass::Tiny),
            "small" => Some(SizeClass::Small),
            "medium" => Some(SizeClass::Medium),
            "large" => Some(SizeClass::Large),
            _ => None,
        }
    }
}

/// Parameters of a generated farm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorProfile {
    pub size_class: SizeClass,
    /// Fixed node count; drawn from the class range when `None`.
    pub node_count: Option<usize>,
    /// Fixed farm area in acres; class default when `None`.
    pub area_acres: Option<f64>,
    pub num_sprayers: usize,
    pub seed: u64,
    pub horizon: f64,
    /// Defaults to ten sprayer tanks.
    pub tanker_capacity: Option<f64>,
}

impl GeneratorProfile {
    pub fn new(size_class: SizeClass, num_sprayers: usize, seed: u64) -> Self {
        GeneratorProfile {
            size_class,
            node_count: None,
            area_acres: None,
            num_sprayers,
            seed,
            horizon: 480.0,
            tanker_capacity: None,
        }
    }

    pub fn with_nodes(mut self, n: usize) -> Self {
        self.node_count = Some(n);
        self
    }
}

pub const SPRAYER_CAPACITY: f64 = 15.0;

/// Default area of the tiny class, small enough that travel does not
/// swamp the value of refilling.
pub const TINY_AREA: f64 = 60.0;

/// Random farm: uniform nodes over a square of side sqrt(area) with the
/// depot at its corner.
pub fn generate(profile: &GeneratorProfile) -> Result<Instance> {
    let (lo, hi) = profile.size_class.node_range();
    let mut rng = ChaCha8Rng::seed_from_u64(profile.seed);
    let n = match profile.node_count {
        Some(n) if n < lo || n > hi => {
            return Err(Error::InvalidInput(format!(
                "{n} nodes outside the {:?} range {lo}-{hi}",
                profile.size_class
            )))
        }
        Some(n) => n,
        None => rng.random_range(lo..=hi),
    };
    let area = match (profile.area_acres, profile.size_class) {
        (Some(a), _) => a,
        (None, SizeClass::Medium) => rng.random_range(600.0..=1500.0),
        (None, SizeClass::Large) => 2000.0,
        (None, SizeClass::Tiny) => TINY_AREA,
        (None, _) => 500.0,
    };
    let side = area.sqrt();
    let nodes = (1..=n)
        .map(|id| {
            let x = round_to(rng.random::<f64>() * side, 6);
            let y = round_to(rng.random::<f64>() * side, 6);
            let q_min = round_to(rng.random_range(1.5..=3.5), 4);
            Node {
                id,
                x,
                y,
                q_min,
                q_max: round_to(2.5 * q_min, 5),
            }
        })
        .collect();
    Instance::new(
        Point::new(0.0, 0.0),
        nodes,
        FleetParams {
            num_sprayers: profile.num_sprayers,
            sprayer_capacity: SPRAYER_CAPACITY,
            tanker_capacity: profile.tanker_capacity.unwrap_or(10.0 * SPRAYER_CAPACITY),
            spray_rate: 2.0,
            refill_time: 3.0,
            speed_factor: 2.0,
            horizon: profile.horizon,
            zone_radius: profile.size_class.zone_radius(),
        },
    )
}

fn round_to(x: f64, decimals: i32) -> f64 {
    let f = 10f64.powi(decimals);
    (x * f).round() / f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_range() {
        for seed in 0..20 {
            let p = GeneratorProfile::new(SizeClass::Small, 2, seed);
            let a = generate(&p).unwrap();
            assert_eq!(a, generate(&p).unwrap());
            assert!((15..=25).contains(&a.num_nodes()));
            for n in a.nodes() {
                assert!((n.q_max / n.q_min - 2.5).abs() < 1e-12);
                assert!((1.5..=3.5).contains(&n.q_min));
            }
        }
        let m = generate(&GeneratorProfile::new(SizeClass::Medium, 3, 1)).unwrap();
        assert!((25..=40).contains(&m.num_nodes()));
        assert_eq!(m.params().zone_radius, 4.9);
        assert!(generate(&GeneratorProfile::new(SizeClass::Small, 2, 0).with_nodes(30)).is_err());
    }
}
