use serde::Serialize;

/// Outcome of a sampled numerical check: `pass` holds exactly when `max_dev < tolerance`.
///
/// Circle-model reports use the endpoint constant `c = (2/α) tan(απ)`, the value that
/// puts `sin(αx)` in the operator domain. Read literally, the printed condition
/// `u(π) - u(-π) = -2 tan(απ) u'(π)` misses this by a factor `-α`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub model: String,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(rename = "W0", skip_serializing_if = "Option::is_none")]
    pub w0: Option<f64>,
    pub samples: usize,
    pub max_dev: f64,
    pub mean_dev: f64,
    pub pass: bool,
    pub tolerance: f64,
}

impl VerificationReport {
    /// Summarize absolute deviations against `tolerance`. Non-finite deviations fail.
    pub fn from_deviations(model: impl Into<String>, deviations: &[f64], tolerance: f64) -> Self {
        let samples = deviations.len();
        let max_dev = deviations
            .iter()
            .map(|d| if d.is_nan() { f64::INFINITY } else { d.abs() })
            .fold(0.0, f64::max);
        let mean_dev = if samples == 0 {
            0.0
        } else {
            deviations.iter().map(|d| d.abs()).sum::<f64>() / samples as f64
        };
        VerificationReport {
            model: model.into(),
            n: None,
            lambda: None,
            w0: None,
            samples,
            max_dev,
            mean_dev,
            pass: max_dev < tolerance,
            tolerance,
        }
    }

    pub fn with_system(mut self, n: usize, lambda: f64, w0: f64) -> Self {
        self.n = Some(n);
        self.lambda = Some(lambda);
        self.w0 = Some(w0);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
