use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Sampling domain of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Interval { lo: f64, hi: f64 },
    Rect { re: [f64; 2], im: [f64; 2] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub region: Region,
    pub resolution: usize,
    pub n_range: [u32; 2],
    pub r_values: Vec<f64>,
}

impl GridSpec {
    pub fn interval(lo: f64, hi: f64, resolution: usize) -> Self {
        Self {
            region: Region::Interval { lo, hi },
            resolution,
            n_range: [0, 0],
            r_values: Vec::new(),
        }
    }

    pub fn rect(re: [f64; 2], im: [f64; 2], resolution: usize) -> Self {
        Self {
            region: Region::Rect { re, im },
            resolution,
            n_range: [0, 0],
            r_values: Vec::new(),
        }
    }

    pub fn with_n_range(mut self, lo: u32, hi: u32) -> Self {
        self.n_range = [lo, hi];
        self
    }

    pub fn with_r_values(mut self, r_values: Vec<f64>) -> Self {
        self.r_values = r_values;
        self
    }

    /// Structural sanity: resolution at least 2, positive finite R values,
    /// ordered ranges.
    pub fn validate(&self) -> crate::Result<()> {
        let bad = |m: String| Err(crate::Error::InvalidParameter(m));
        if self.resolution < 2 {
            return bad(format!("grid resolution must be >= 2, got {}", self.resolution));
        }
        if let Some(r) = self.r_values.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return bad(format!("R values must be positive, got {r}"));
        }
        if self.n_range[0] > self.n_range[1] {
            return bad(format!("empty n range {:?}", self.n_range));
        }
        let ordered = match &self.region {
            Region::Interval { lo, hi } => lo <= hi,
            Region::Rect { re, im } => re[0] <= re[1] && im[0] <= im[1],
        };
        if !ordered {
            return bad("region bounds are out of order".into());
        }
        Ok(())
    }

    /// Real sample points of an interval region (empty for rectangles).
    pub fn line_points(&self) -> Vec<f64> {
        match self.region {
            Region::Interval { lo, hi } => linspace(lo, hi, self.resolution),
            Region::Rect { .. } => Vec::new(),
        }
    }

    /// Complex sample points `(re, im)` of a rectangle, row-major in `im`.
    pub fn rect_points(&self) -> Vec<(f64, f64)> {
        match self.region {
            Region::Rect { re, im } => {
                let xs = linspace(re[0], re[1], self.resolution);
                let ys = linspace(im[0], im[1], self.resolution);
                ys.iter()
                    .flat_map(|&y| xs.iter().map(move |&x| (x, y)))
                    .collect()
            }
            Region::Interval { lo, hi } => linspace(lo, hi, self.resolution)
                .into_iter()
                .map(|x| (x, 0.0))
                .collect(),
        }
    }

    pub fn n_values(&self) -> std::ops::RangeInclusive<u32> {
        self.n_range[0]..=self.n_range[1]
    }
}

/// `k` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    match k {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..k)
            .map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64)
            .collect(),
    }
}

pub type Witness = BTreeMap<String, f64>;
pub type Constants = BTreeMap<String, f64>;

/// Build a witness map from `(name, value)` pairs.
pub fn witness<const N: usize>(pairs: [(&str, f64); N]) -> Witness {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Outcome of one numerical check. `passed` holds iff
/// `worst_violation <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub grid: GridSpec,
    pub worst_violation: f64,
    pub witness: Witness,
    pub constants: Constants,
    pub passed: bool,
    pub tolerance: f64,
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub fn new(
        check_id: impl Into<String>,
        grid: GridSpec,
        worst_violation: f64,
        witness: Witness,
        constants: Constants,
        tolerance: f64,
        started: Instant,
    ) -> Self {
        let worst_violation = finite(worst_violation);
        let constants = constants.into_iter().map(|(k, v)| (k, finite(v))).collect();
        let witness = witness.into_iter().map(|(k, v)| (k, finite(v))).collect();
        Self {
            check_id: check_id.into(),
            grid,
            passed: worst_violation <= tolerance,
            worst_violation,
            witness,
            constants,
            tolerance,
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }

    /// Merge two partial reports of the same check. Keeps the larger
    /// violation with its witness, the larger value of every constant, and
    /// sums runtimes. Associative and commutative.
    pub fn merge(&self, other: &Self) -> Self {
        let (hi, _) = match self
            .worst_violation
            .total_cmp(&other.worst_violation)
            .then_with(|| cmp_witness(&self.witness, &other.witness))
        {
            Ordering::Less => (other, self),
            _ => (self, other),
        };
        let mut constants = self.constants.clone();
        for (k, &v) in &other.constants {
            constants
                .entry(k.clone())
                .and_modify(|c| *c = c.max(v))
                .or_insert(v);
        }
        let tolerance = self.tolerance.min(other.tolerance);
        Self {
            check_id: hi.check_id.clone(),
            grid: hi.grid.clone(),
            worst_violation: hi.worst_violation,
            witness: hi.witness.clone(),
            constants,
            passed: hi.worst_violation <= tolerance,
            tolerance,
            runtime_ms: self.runtime_ms + other.runtime_ms,
        }
    }

    /// Canonical JSON with `runtime_ms` zeroed, for byte-level comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.runtime_ms = 0;
        serde_json::to_string_pretty(&r).expect("report serializes")
    }
}

fn cmp_witness(a: &Witness, b: &Witness) -> Ordering {
    let ka = a.iter().map(|(k, v)| (k.as_str(), v.to_bits()));
    let kb = b.iter().map(|(k, v)| (k.as_str(), v.to_bits()));
    ka.cmp(kb)
}

/// JSON has no infinities; clamp them to the largest finite value.
fn finite(x: f64) -> f64 {
    if x.is_nan() {
        f64::MAX
    } else {
        x.clamp(-f64::MAX, f64::MAX)
    }
}

/// Running maximum of a violation with the sample where it occurred.
/// Ties keep the earlier sample, so sequential folds are deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Worst {
    pub value: f64,
    pub witness: Witness,
}

impl Default for Worst {
    fn default() -> Self {
        Self {
            value: f64::NEG_INFINITY,
            witness: Witness::new(),
        }
    }
}

impl Worst {
    pub fn offer(&mut self, value: f64, witness: impl FnOnce() -> Witness) {
        if value > self.value || (value.is_nan() && !self.value.is_nan()) {
            self.value = value;
            self.witness = witness();
        }
    }

    pub fn absorb(&mut self, other: Worst) {
        if other.value > self.value || (other.value.is_nan() && !self.value.is_nan()) {
            *self = other;
        }
    }

    pub fn fold(parts: impl IntoIterator<Item = Worst>) -> Worst {
        parts.into_iter().fold(Worst::default(), |mut acc, w| {
            acc.absorb(w);
            acc
        })
    }
}
