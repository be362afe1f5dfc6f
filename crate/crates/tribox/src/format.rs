//! On-disk JSON formats: the `tribox-v1` box schema and quantum scenario
//! files.
//!
//! A box file is `{"format":"tribox-v1","probs":[64 reals]}` in the flat
//! `i*32+j*16+k*8+m*4+n*2+o` order, optionally carrying a `correlators`
//! object keyed "A0", "B1", "A0B0", "A1B1C0" and so on. Writers emit 17
//! significant digits.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::behavior::{Behavior, BoxError, CorrelatorVector, EXACT_TOL, QUANTUM_TOL};
use crate::quantum::{self, DensityOperator, MeasurementSettings, QuantumError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format tag {0:?} (expected \"tribox-v1\")")]
    BadFormatTag(String),
    #[error("probs must have 64 entries, got {0}")]
    BadLength(usize),
    #[error(transparent)]
    Box(#[from] BoxError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error("unknown state family {0:?}")]
    UnknownState(String),
    #[error("unknown settings name {0:?}")]
    UnknownSettings(String),
    #[error("missing parameter {0} for {1}")]
    MissingParameter(&'static str, String),
}

#[derive(Debug, Serialize, Deserialize)]
struct BoxFile {
    format: String,
    probs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    correlators: Option<BTreeMap<String, f64>>,
}

pub fn correlator_map(c: &CorrelatorVector) -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    for i in 0..2 {
        m.insert(format!("A{i}"), c.singles[i]);
        m.insert(format!("B{i}"), c.singles[2 + i]);
        m.insert(format!("C{i}"), c.singles[4 + i]);
    }
    for i in 0..2 {
        for j in 0..2 {
            m.insert(format!("A{i}B{j}"), c.pairs[2 * i + j]);
            m.insert(format!("A{i}C{j}"), c.pairs[4 + 2 * i + j]);
            m.insert(format!("B{i}C{j}"), c.pairs[8 + 2 * i + j]);
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                m.insert(format!("A{i}B{j}C{k}"), c.triples[4 * i + 2 * j + k]);
            }
        }
    }
    m
}

/// Serialize a behavior as tribox-v1 JSON with 17 significant digits.
pub fn write_box_json(b: &Behavior, with_correlators: bool) -> String {
    let mut out = String::from("{\"format\":\"tribox-v1\",\"probs\":[");
    for (idx, p) in b.probs().iter().enumerate() {
        if idx > 0 {
            out.push(',');
        }
        out.push_str(&format_f64(*p));
    }
    out.push(']');
    if with_correlators {
        out.push_str(",\"correlators\":{");
        for (idx, (key, val)) in correlator_map(b.correlators()).iter().enumerate() {
            if idx > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{key}\":{}", format_f64(*val)));
        }
        out.push('}');
    }
    out.push('}');
    out
}

/// 17 significant digits, enough to round-trip any f64.
fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parse and validate a tribox-v1 box file. `strict` validates at the exact
/// tolerance, otherwise at the quantum tolerance.
pub fn read_box_json(text: &str, strict: bool) -> Result<Behavior, FormatError> {
    let file: BoxFile = serde_json::from_str(text)?;
    if file.format != "tribox-v1" {
        return Err(FormatError::BadFormatTag(file.format));
    }
    if file.probs.len() != 64 {
        return Err(FormatError::BadLength(file.probs.len()));
    }
    let mut table = [0.0; 64];
    table.copy_from_slice(&file.probs);
    let tol = if strict { EXACT_TOL } else { QUANTUM_TOL };
    Ok(Behavior::from_probabilities_with_tol(table, tol)?)
}

/// Reconstruct a behavior from a correlators-only JSON object (the optional
/// sibling of `probs`).
pub fn behavior_from_correlator_map(m: &BTreeMap<String, f64>) -> Result<Behavior, FormatError> {
    let mut c = CorrelatorVector {
        singles: [0.0; 6],
        pairs: [0.0; 12],
        triples: [0.0; 8],
    };
    let get = |key: &str| m.get(key).copied().unwrap_or(0.0);
    for i in 0..2 {
        c.singles[i] = get(&format!("A{i}"));
        c.singles[2 + i] = get(&format!("B{i}"));
        c.singles[4 + i] = get(&format!("C{i}"));
    }
    for i in 0..2 {
        for j in 0..2 {
            c.pairs[2 * i + j] = get(&format!("A{i}B{j}"));
            c.pairs[4 + 2 * i + j] = get(&format!("A{i}C{j}"));
            c.pairs[8 + 2 * i + j] = get(&format!("B{i}C{j}"));
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                c.triples[4 * i + 2 * j + k] = get(&format!("A{i}B{j}C{k}"));
            }
        }
    }
    Ok(c.to_behavior()?)
}

/// Declarative quantum scenario: a named state family with parameters plus
/// either a named settings constructor or six explicit direction vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub state: StateSpec,
    pub settings: SettingsSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateSpec {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SettingsSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vectors: Option<BTreeMap<String, [f64; 3]>>,
}

impl StateSpec {
    pub fn build(&self) -> Result<DensityOperator, FormatError> {
        let need = |v: Option<f64>, name: &'static str| {
            v.ok_or_else(|| FormatError::MissingParameter(name, self.family.clone()))
        };
        Ok(match self.family.as_str() {
            "ghz" => quantum::ghz(),
            "gghz" => quantum::gghz(need(self.theta, "theta")?)?,
            "ghz_class" => {
                quantum::ghz_class(need(self.theta, "theta")?, need(self.theta3, "theta3")?)?
            }
            "w" => quantum::w(),
            "w_class" => quantum::w_class(
                need(self.alpha, "alpha")?,
                need(self.beta, "beta")?,
                need(self.gamma, "gamma")?,
            )?,
            "werner" => quantum::werner(need(self.p, "p")?)?,
            "bisep_w" => quantum::bisep_w(),
            "ghz_w" => quantum::ghz_w(need(self.p, "p")?, need(self.q, "q")?)?,
            "cq" => quantum::sample_cq_qc(quantum::CqQcKind::Cq, self.seed.unwrap_or(0)),
            "qc12_3" => quantum::sample_cq_qc(quantum::CqQcKind::Qc12_3, self.seed.unwrap_or(0)),
            "qc13_2" => quantum::sample_cq_qc(quantum::CqQcKind::Qc13_2, self.seed.unwrap_or(0)),
            "sixqubit_4sep" => quantum::sixqubit_4sep(),
            "sixqubit_partial" => quantum::sixqubit_partial(),
            other => return Err(FormatError::UnknownState(other.to_string())),
        })
    }
}

impl SettingsSpec {
    pub fn build(&self) -> Result<MeasurementSettings, FormatError> {
        if let Some(v) = &self.vectors {
            let get = |key: &str| {
                v.get(key)
                    .copied()
                    .ok_or(FormatError::MissingParameter("direction", key.to_string()))
            };
            return Ok(MeasurementSettings::new(
                [get("a0")?, get("a1")?],
                [get("b0")?, get("b1")?],
                [get("c0")?, get("c1")?],
            )?);
        }
        let name = self
            .name
            .as_deref()
            .ok_or(FormatError::MissingParameter("name", "settings".into()))?;
        let need = |v: Option<f64>, what: &'static str| {
            v.ok_or_else(|| FormatError::MissingParameter(what, name.to_string()))
        };
        Ok(match name {
            "sd_xy" => quantum::settings_sd_xy(),
            "sd_xz" => quantum::settings_sd_xz(),
            "md_xy" => quantum::settings_md_xy(),
            "md_xz" => quantum::settings_md_xz(),
            "gghz_dependent" => quantum::settings_gghz_dependent(need(self.theta, "theta")?)?,
            "class99" => quantum::settings_class99(need(self.theta, "theta")?)?,
            "mixed_p" => quantum::settings_mixed_p(need(self.p, "p")?)?,
            other => return Err(FormatError::UnknownSettings(other.to_string())),
        })
    }
}

/// Parse a scenario file and produce its box.
pub fn box_from_scenario_json(text: &str) -> Result<Behavior, FormatError> {
    let sc: Scenario = serde_json::from_str(text)?;
    let rho = sc.state.build()?;
    let settings = sc.settings.build()?;
    if rho.qubits() == 6 {
        Ok(quantum::born_box_blocked(
            &rho,
            &crate::quantum::BlockStrategy::sixqubit_xy(),
        )?)
    } else {
        Ok(quantum::born_box(&rho, &settings)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behavior::white_noise;
    use crate::vertices::{class8_box, svetlichny_box};

    #[test]
    fn box_json_round_trips_exactly() {
        for b in [white_noise(), svetlichny_box(1, 0, 1, 1), class8_box()] {
            let text = write_box_json(&b, true);
            let back = read_box_json(&text, true).unwrap();
            assert_eq!(back.distance(&b), 0.0);
        }
    }

    #[test]
    fn format_tag_is_checked() {
        let text = r#"{"format":"tribox-v2","probs":[0.015625]}"#;
        assert!(matches!(
            read_box_json(text, true),
            Err(FormatError::BadFormatTag(_))
        ));
    }

    #[test]
    fn correlator_reconstruction_matches() {
        let b = svetlichny_box(0, 1, 0, 0);
        let m = correlator_map(b.correlators());
        let back = behavior_from_correlator_map(&m).unwrap();
        assert!(back.distance(&b) < 1e-15);
    }

    #[test]
    fn scenario_round_trip() {
        let text = r#"{"state":{"family":"gghz","theta":0.5},"settings":{"name":"sd_xy"}}"#;
        let b = box_from_scenario_json(text).unwrap();
        // isotropic Svetlichny box with weight sin(2θ)/sqrt2
        let p = (1.0f64).sin_cos();
        let _ = p;
        let s = crate::measures::svetlichny_value(&b, 0, 0, 0, 0);
        assert!((s - 8.0 * (1.0f64).sin() / 2.0f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn bad_scenarios_are_rejected() {
        assert!(box_from_scenario_json(
            r#"{"state":{"family":"nope"},"settings":{"name":"sd_xy"}}"#
        )
        .is_err());
        assert!(box_from_scenario_json(
            r#"{"state":{"family":"gghz"},"settings":{"name":"sd_xy"}}"#
        )
        .is_err());
        assert!(
            box_from_scenario_json(r#"{"state":{"family":"ghz"},"settings":{"name":"wat"}}"#)
                .is_err()
        );
    }
}
