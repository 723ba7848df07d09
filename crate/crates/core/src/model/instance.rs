use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A field node. Ids run from 1 to N; id 0 is the depot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    /// Minimum fertilizer to apply.
    pub q_min: f64,
    /// Maximum fertilizer to apply.
    pub q_max: f64,
}

/// Fleet and operating parameters shared by every node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FleetParams {
    /// Number of sprayers, K.
    pub num_sprayers: usize,
    /// Sprayer tank capacity, Qs.
    pub sprayer_capacity: f64,
    /// Tanker capacity, Qt.
    pub tanker_capacity: f64,
    /// Fertilizer applied per unit of service time, eta.
    pub spray_rate: f64,
    /// Duration of one refill, xi.
    pub refill_time: f64,
    /// Sprayer speed divided by tanker speed, beta.
    pub speed_factor: f64,
    /// Working horizon, tMax.
    pub horizon: f64,
    /// Radius used by the zone removal operator.
    pub zone_radius: f64,
}

/// A validated problem instance with a precomputed travel-time matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    depot: Point,
    nodes: Vec<Node>,
    params: FleetParams,
    dist: Vec<f64>,
}

impl Instance {
    /// Validates the data and builds the distance matrix.
    ///
    /// Node ids must be exactly 1..=N in order.
    pub fn new(depot: Point, nodes: Vec<Node>, params: FleetParams) -> Result<Self> {
        validate(&depot, &nodes, &params)?;
        let pts: Vec<Point> = std::iter::once(depot)
            .chain(nodes.iter().map(|n| Point::new(n.x, n.y)))
            .collect();
        let m = pts.len();
        let mut dist = vec![0.0; m * m];
        for a in 0..m {
            for b in 0..m {
                dist[a * m + b] = pts[a].dist(&pts[b]);
            }
        }
        Ok(Instance {
            depot,
            nodes,
            params,
            dist,
        })
    }

    /// Same nodes with different fleet parameters.
    pub fn with_params(&self, params: FleetParams) -> Result<Self> {
        Instance::new(self.depot, self.nodes.clone(), params)
    }

    pub fn depot(&self) -> Point {
        self.depot
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn params(&self) -> &FleetParams {
        &self.params
    }

    /// Number of field nodes N.
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_sprayers(&self) -> usize {
        self.params.num_sprayers
    }

    /// Node by id. Panics on the depot or an unknown id.
    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id - 1]
    }

    /// Coordinates of a node or the depot (id 0).
    pub fn location(&self, id: usize) -> Point {
        if id == 0 {
            self.depot
        } else {
            let n = self.node(id);
            Point::new(n.x, n.y)
        }
    }

    /// Sprayer travel time between two ids, 0 being the depot.
    pub fn travel_time(&self, a: usize, b: usize) -> Result<f64> {
        let n = self.nodes.len();
        if a > n {
            return Err(Error::UnknownNode(a));
        }
        if b > n {
            return Err(Error::UnknownNode(b));
        }
        Ok(self.t(a, b))
    }

    #[inline]
    pub(crate) fn t(&self, a: usize, b: usize) -> f64 {
        self.dist[a * (self.nodes.len() + 1) + b]
    }

    /// Shortest admissible service time qMin/eta.
    #[inline]
    pub fn min_service(&self, id: usize) -> f64 {
        self.nodes[id - 1].q_min / self.params.spray_rate
    }

    /// Longest admissible service time qMax/eta.
    #[inline]
    pub fn max_service(&self, id: usize) -> f64 {
        self.nodes[id - 1].q_max / self.params.spray_rate
    }

    /// Service time that empties a full sprayer tank, Qs/eta.
    #[inline]
    pub fn tank_service(&self) -> f64 {
        self.params.sprayer_capacity / self.params.spray_rate
    }

    pub(crate) fn check_id(&self, id: usize) -> Result<()> {
        if id == 0 || id > self.nodes.len() {
            Err(Error::UnknownNode(id))
        } else {
            Ok(())
        }
    }
}

fn validate(depot: &Point, nodes: &[Node], p: &FleetParams) -> Result<()> {
    if !(depot.x.is_finite() && depot.y.is_finite()) {
        return Err(Error::invalid("depot", "coordinates must be finite"));
    }
    if nodes.is_empty() {
        return Err(Error::invalid(
            "nodes",
            "at least one field node is required",
        ));
    }
    for (i, n) in nodes.iter().enumerate() {
        let field = |f: &str| format!("nodes[{i}].{f}");
        if n.id != i + 1 {
            return Err(Error::invalid(
                field("id"),
                format!("expected id {}, found {}", i + 1, n.id),
            ));
        }
        if !(n.x.is_finite() && n.y.is_finite()) {
            return Err(Error::invalid(field("x"), "coordinates must be finite"));
        }
        if !(n.q_min.is_finite() && n.q_min > 0.0) {
            return Err(Error::invalid(field("qMin"), "must be positive"));
        }
        if !(n.q_max.is_finite() && n.q_max >= n.q_min) {
            return Err(Error::invalid(field("qMax"), "must be at least qMin"));
        }
    }
    if p.num_sprayers == 0 {
        return Err(Error::invalid("K", "at least one sprayer is required"));
    }
    let positive = |v: f64, name: &str| {
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(Error::invalid(name, "must be positive"))
        }
    };
    positive(p.sprayer_capacity, "Qs")?;
    positive(p.tanker_capacity, "Qt")?;
    positive(p.spray_rate, "eta")?;
    positive(p.horizon, "tMax")?;
    if !(p.refill_time.is_finite() && p.refill_time >= 0.0) {
        return Err(Error::invalid("xi", "must be non-negative"));
    }
    if !(p.speed_factor.is_finite() && p.speed_factor >= 1.0) {
        return Err(Error::invalid("beta", "must be at least 1"));
    }
    if !(p.zone_radius.is_finite() && p.zone_radius >= 0.0) {
        return Err(Error::invalid("rd", "must be non-negative"));
    }
    if p.tanker_capacity <= p.sprayer_capacity {
        return Err(Error::invalid("Qt", "invariant Qt > Qs violated"));
    }
    let max_qmin = nodes.iter().map(|n| n.q_min).fold(0.0, f64::max);
    if p.sprayer_capacity <= max_qmin {
        return Err(Error::invalid("Qs", "invariant Qs > max qMin violated"));
    }
    Ok(())
}
