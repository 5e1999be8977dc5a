use serde::Serialize;

/// A grid location: a wave-variable value or an `(x, t)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum GridPoint {
    Xi { xi: f64 },
    XT { x: f64, t: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedPoint {
    pub point: GridPoint,
    pub reason: String,
}

/// Largest modulus reached by one additive term of the residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermMax {
    pub term: String,
    pub max_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub mean_abs: f64,
    pub worst_point: GridPoint,
    pub evaluated: usize,
    pub excluded_points: Vec<ExcludedPoint>,
    pub per_term: Vec<TermMax>,
    pub tolerance: f64,
    pub pass: bool,
    /// Some sampled solution value had a non-negligible imaginary part.
    pub complex_values: bool,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("every grid point was excluded ({} points)", excluded.len())]
pub struct AllExcluded {
    pub excluded: Vec<ExcludedPoint>,
}

/// Incremental construction of a [`ResidualReport`].
#[derive(Debug, Clone, Default)]
pub struct ReportBuilder {
    terms: Vec<TermMax>,
    sum: f64,
    count: usize,
    max: f64,
    worst: Option<GridPoint>,
    excluded: Vec<ExcludedPoint>,
    complex_values: bool,
}

impl ReportBuilder {
    pub fn new(term_names: Vec<String>) -> Self {
        ReportBuilder {
            terms: term_names
                .into_iter()
                .map(|term| TermMax { term, max_abs: 0.0 })
                .collect(),
            ..Default::default()
        }
    }

    /// Records one residual value; `terms` must match the names given to [`new`](Self::new).
    pub fn record(&mut self, point: GridPoint, residual: f64, terms: &[f64]) {
        for (t, v) in self.terms.iter_mut().zip(terms) {
            t.max_abs = t.max_abs.max(*v);
        }
        self.sum += residual;
        self.count += 1;
        if self.worst.is_none() || residual > self.max {
            self.max = residual;
            self.worst = Some(point);
        }
    }

    pub fn exclude(&mut self, point: GridPoint, reason: impl Into<String>) {
        self.excluded.push(ExcludedPoint {
            point,
            reason: reason.into(),
        });
    }

    pub fn mark_complex(&mut self) {
        self.complex_values = true;
    }

    pub fn finish(self, tolerance: f64) -> Result<ResidualReport, AllExcluded> {
        let Some(worst) = self.worst else {
            return Err(AllExcluded {
                excluded: self.excluded,
            });
        };
        Ok(ResidualReport {
            max_abs: self.max,
            mean_abs: self.sum / self.count as f64,
            worst_point: worst,
            evaluated: self.count,
            excluded_points: self.excluded,
            per_term: self.terms,
            tolerance,
            pass: self.max <= tolerance,
            complex_values: self.complex_values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_dominates_mean() {
        let mut b = ReportBuilder::new(vec!["a".into()]);
        b.record(GridPoint::Xi { xi: 0.0 }, 1e-12, &[1.0]);
        b.record(GridPoint::Xi { xi: 1.0 }, 3e-12, &[2.0]);
        let r = b.finish(1e-11).unwrap();
        assert!(r.max_abs >= r.mean_abs);
        assert_eq!(r.worst_point, GridPoint::Xi { xi: 1.0 });
        assert!(r.pass);
        assert_eq!(r.per_term[0].max_abs, 2.0);
    }

    #[test]
    fn empty_grid_fails() {
        let mut b = ReportBuilder::new(vec![]);
        b.exclude(GridPoint::Xi { xi: 0.0 }, "pole");
        assert!(b.finish(1.0).is_err());
    }
}
