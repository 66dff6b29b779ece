use serde::Serialize;

/// Supporting evidence attached to a check outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Value(f64),
    Vector(Vec<f64>),
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check_name: String,
    pub residual: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub notes: String,
}

impl Report {
    /// Passes iff `residual <= tol`.
    pub fn residual(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Report {
            check_name: name.into(),
            residual,
            pass: residual <= tol,
            witness: None,
            notes: String::new(),
        }
    }

    /// Pass/fail decided by a rank or eigenvalue condition rather than the residual.
    pub fn condition(name: impl Into<String>, residual: f64, pass: bool) -> Self {
        Report {
            check_name: name.into(),
            residual,
            pass,
            witness: None,
            notes: String::new(),
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }
}

pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// Largest residual among reports whose name starts with `prefix`.
pub fn max_residual(reports: &[Report], prefix: &str) -> f64 {
    reports
        .iter()
        .filter(|r| r.check_name.starts_with(prefix))
        .map(|r| r.residual)
        .fold(0.0, f64::max)
}
