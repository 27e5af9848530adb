//! Scenario configuration files: JSON objects whose physical quantities are
//! `{ "value": .., "unit": .. }` pairs. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constants::K_B;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quantity {
    pub value: f64,
    pub unit: String,
    /// Where the value comes from (`stated`, `reference`, `placeholder`, ...).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl Quantity {
    pub fn new(value: f64, unit: &str) -> Self {
        Self {
            value,
            unit: unit.to_string(),
            source: None,
        }
    }

    pub fn sourced(value: f64, unit: &str, source: &str) -> Self {
        Self {
            source: Some(source.to_string()),
            ..Self::new(value, unit)
        }
    }
}

/// Physical dimension a quantity is converted into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Dimensionless,
    Length,
    Mass,
    /// Angular frequency, rad/s. Cyclic units (Hz, kHz, MHz) are multiplied by 2π.
    AngularFrequency,
    Power,
    /// Energy; temperature units are read as `k_B T`.
    Energy,
    Temperature,
    Time,
}

impl Dimension {
    fn units(self) -> &'static [(&'static str, f64)] {
        const TWO_PI: f64 = 2.0 * PI;
        match self {
            Dimension::Dimensionless => &[("", 1.0), ("1", 1.0)],
            Dimension::Length => &[("m", 1.0), ("mm", 1e-3), ("um", 1e-6), ("nm", 1e-9)],
            Dimension::Mass => &[("kg", 1.0), ("u", 1.660_539_066_60e-27)],
            Dimension::AngularFrequency => &[
                ("rad/s", 1.0),
                ("1/s", 1.0),
                ("Hz", TWO_PI),
                ("kHz", TWO_PI * 1e3),
                ("MHz", TWO_PI * 1e6),
            ],
            Dimension::Power => &[("W", 1.0), ("mW", 1e-3)],
            Dimension::Energy => &[("J", 1.0), ("K", K_B), ("mK", K_B * 1e-3), ("uK", K_B * 1e-6)],
            Dimension::Temperature => &[("K", 1.0), ("mK", 1e-3), ("uK", 1e-6)],
            Dimension::Time => &[("s", 1.0), ("ms", 1e-3), ("us", 1e-6), ("ns", 1e-9)],
        }
    }

    pub fn si_unit(self) -> &'static str {
        match self {
            Dimension::Dimensionless => "1",
            Dimension::Length => "m",
            Dimension::Mass => "kg",
            Dimension::AngularFrequency => "rad/s",
            Dimension::Power => "W",
            Dimension::Energy => "J",
            Dimension::Temperature => "K",
            Dimension::Time => "s",
        }
    }
}

/// Converts `q` to SI, naming `key` in any error.
pub fn to_si(key: &str, q: &Quantity, dim: Dimension) -> Result<f64> {
    if !q.value.is_finite() {
        return Err(Error::Config(format!("`{key}`: value {} is not finite", q.value)));
    }
    let table = dim.units();
    table
        .iter()
        .find(|(u, _)| *u == q.unit)
        .map(|(_, f)| q.value * f)
        .ok_or_else(|| {
            let valid: Vec<_> = table.iter().map(|(u, _)| format!("\"{u}\"")).collect();
            Error::Config(format!(
                "`{key}`: unit \"{}\" not accepted; expected one of {}",
                q.unit,
                valid.join(", ")
            ))
        })
}

/// Which quantity in `ω_V = −2 N Δ0 |g|` is solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResonanceUnknown {
    AtomNumber,
    GMod,
    LightShift,
    TrapFrequency,
}

impl fmt::Display for ResonanceUnknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResonanceUnknown::AtomNumber => "atom_number",
            ResonanceUnknown::GMod => "g_mod",
            ResonanceUnknown::LightShift => "light_shift",
            ResonanceUnknown::TrapFrequency => "trap_frequency",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavityConfig {
    pub finesse: Quantity,
    pub waist: Quantity,
    pub roundtrip_length: Quantity,
    pub gamma_c: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesConfig {
    pub mass: Quantity,
    pub transition_wavelength: Quantity,
    pub linewidth: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveConfig {
    pub lattice_wavelength: Quantity,
    pub power: Quantity,
    pub trap_depth: Quantity,
    pub light_shift: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleConfig {
    pub g_mod: Quantity,
    pub atom_number: Quantity,
    /// Temperature at which the field-side chain and traces start.
    pub temperature: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SidebandConfig {
    /// Probe frequency for the Lorentzian rate; defaults to `ω_V`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Quantity>,
}

/// Field-simulation block consumed by the `fields` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldsConfig {
    /// Phase modulation depth ε of `g`; zero means constant `g`.
    pub epsilon: Quantity,
    /// Modulation frequency; defaults to the sideband resonance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Quantity>,
    pub span: Quantity,
    pub dt: Quantity,
    /// Discarded before demodulation; defaults to `5/γc`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transient: Option<Quantity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub label: String,
    #[serde(default)]
    pub seed: u64,
    pub solve_for: ResonanceUnknown,
    pub cavity: CavityConfig,
    pub species: SpeciesConfig,
    pub drive: DriveConfig,
    pub ensemble: EnsembleConfig,
    #[serde(default, skip_serializing_if = "is_default_sideband")]
    pub sideband: SidebandConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fields: Option<FieldsConfig>,
}

fn is_default_sideband(s: &SidebandConfig) -> bool {
    s.omega.is_none()
}

/// Optional quantities that overrides may create, with their default unit.
const CREATABLE: &[(&str, &str)] = &[("sideband.omega", "rad/s")];

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Dotted keys that overrides and sweeps may address.
    pub fn valid_keys(&self) -> Vec<String> {
        let value = serde_json::to_value(self).expect("config serializes");
        let mut keys = Vec::new();
        collect_keys(&value, "", &mut keys);
        for (k, _) in CREATABLE {
            if !keys.iter().any(|x| x == k) {
                keys.push(k.to_string());
            }
        }
        keys.sort();
        keys
    }

    /// Applies `key=value` with last-write-wins semantics. For quantities,
    /// `value` is either a bare number (unit kept) or `"<number> <unit>"`.
    pub fn apply_override(&mut self, key: &str, raw: &str) -> Result<()> {
        let mut value = serde_json::to_value(&*self).expect("config serializes");
        let unknown = || {
            Error::Config(format!(
                "unknown key `{key}`; valid keys: {}",
                self.valid_keys().join(", ")
            ))
        };
        let path: Vec<&str> = key.split('.').collect();
        if path.iter().any(|p| p.is_empty()) {
            return Err(unknown());
        }
        if let Some((_, unit)) = CREATABLE.iter().find(|(k, _)| *k == key) {
            ensure_quantity_slot(&mut value, &path, unit);
        }
        let slot = path
            .iter()
            .try_fold(&mut value, |v, seg| v.as_object_mut().and_then(|o| o.get_mut(*seg)))
            .ok_or_else(unknown)?;

        match slot {
            Value::Object(obj) if obj.contains_key("value") => {
                let mut parts = raw.split_whitespace();
                let number = parts
                    .next()
                    .and_then(|s| s.parse::<f64>().ok())
                    .ok_or_else(|| Error::Config(format!("`{key}`: cannot parse \"{raw}\" as a number")))?;
                obj.insert("value".into(), number_value(key, number)?);
                if let Some(unit) = parts.next() {
                    obj.insert("unit".into(), Value::String(unit.to_string()));
                }
                if parts.next().is_some() {
                    return Err(Error::Config(format!("`{key}`: expected \"<number> [unit]\", got \"{raw}\"")));
                }
                obj.remove("source");
            }
            Value::Object(_) => return Err(unknown()),
            Value::Number(_) => {
                let n: u64 = raw
                    .parse()
                    .map_err(|_| Error::Config(format!("`{key}`: expected a non-negative integer, got \"{raw}\"")))?;
                *slot = Value::from(n);
            }
            _ => *slot = Value::String(raw.to_string()),
        }
        *self = serde_json::from_value(value).map_err(|e| Error::Config(format!("`{key}`: {e}")))?;
        Ok(())
    }

    /// Current value of a quantity key, in its configured unit.
    pub fn quantity(&self, key: &str) -> Option<Quantity> {
        let value = serde_json::to_value(self).ok()?;
        let v = key.split('.').try_fold(&value, |v, seg| v.get(seg))?;
        serde_json::from_value(v.clone()).ok()
    }
}

fn number_value(key: &str, x: f64) -> Result<Value> {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .ok_or_else(|| Error::Config(format!("`{key}`: value {x} is not finite")))
}

fn ensure_quantity_slot(root: &mut Value, path: &[&str], unit: &str) {
    let mut v = root;
    for (i, seg) in path.iter().enumerate() {
        let obj = match v.as_object_mut() {
            Some(o) => o,
            None => return,
        };
        let last = i + 1 == path.len();
        v = obj.entry(seg.to_string()).or_insert_with(|| {
            if last {
                serde_json::json!({ "value": 0.0, "unit": unit })
            } else {
                Value::Object(Default::default())
            }
        });
    }
}

fn collect_keys(v: &Value, prefix: &str, out: &mut Vec<String>) {
    if let Value::Object(obj) = v {
        if obj.contains_key("value") && obj.contains_key("unit") {
            out.push(prefix.to_string());
            return;
        }
        for (k, child) in obj {
            let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
            collect_keys(child, &key, out);
        }
    } else if !prefix.is_empty() {
        out.push(prefix.to_string());
    }
}

/// Names of the built-in presets.
pub const PRESETS: &[&str] = &["rb87-paper"];

pub fn preset(name: &str) -> Result<ScenarioConfig> {
    match name {
        "rb87-paper" => Ok(rb87_paper()),
        _ => Err(Error::Config(format!(
            "unknown preset `{name}`; available: {}",
            PRESETS.join(", ")
        ))),
    }
}

/// Rubidium-87 design in a triangular high-finesse ring cavity.
///
/// `stated` values are the design's own figures; `reference` values are
/// standard atomic data; `placeholder` marks the round-trip length and the
/// starting temperature, which only scale absolute sideband powers and set
/// where temperature traces begin.
fn rb87_paper() -> ScenarioConfig {
    use Quantity as Q;
    ScenarioConfig {
        label: "rb87-paper".into(),
        seed: 1,
        solve_for: ResonanceUnknown::AtomNumber,
        cavity: CavityConfig {
            finesse: Q::sourced(1.8e5, "", "stated"),
            waist: Q::sourced(130.0, "um", "stated"),
            roundtrip_length: Q::sourced(0.1, "m", "placeholder"),
            // π · 17 kHz as an angular rate, i.e. 2π · 8.5 kHz.
            gamma_c: Q::sourced(8.5, "kHz", "stated"),
        },
        species: SpeciesConfig {
            mass: Q::sourced(1.443_16e-25, "kg", "reference"),
            transition_wavelength: Q::sourced(780.24, "nm", "stated"),
            linewidth: Q::sourced(6.07, "MHz", "reference"),
        },
        drive: DriveConfig {
            lattice_wavelength: Q::sourced(780.34, "nm", "stated"),
            power: Q::sourced(50.0, "mW", "stated"),
            trap_depth: Q::sourced(460.0, "uK", "stated"),
            light_shift: Q::sourced(-1.0, "rad/s", "stated"),
        },
        ensemble: EnsembleConfig {
            g_mod: Q::sourced(0.9, "", "stated"),
            atom_number: Q::sourced(1.3e6, "", "stated"),
            temperature: Q::sourced(250.0, "uK", "placeholder"),
        },
        sideband: SidebandConfig::default(),
        fields: Some(FieldsConfig {
            epsilon: Q::new(1e-3, ""),
            omega: None,
            span: Q::new(250.0, "us"),
            dt: Q::new(20.0, "ns"),
            transient: None,
        }),
    }
}

/// A figure quoted for a preset, for side-by-side display with the
/// computed record value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatedTarget {
    /// Record key.
    pub key: &'static str,
    /// Value in the record's unit.
    pub value: f64,
    pub text: &'static str,
}

/// Figures quoted for a preset; empty for presets without any.
pub fn preset_targets(name: &str) -> Vec<StatedTarget> {
    let t = |key, value, text| StatedTarget { key, value, text };
    match name {
        "rb87-paper" => vec![
            t("eta_c", 0.6, "eta_c ~ 0.6"),
            t("eta_ld", 1e-2, "eta_LD ~ 1e-2"),
            t("gamma_tilde", 8e3, "Gamma_tilde ~ 8e3 1/s"),
            t("omega_v", 2.0 * PI * 380e3, "omega_V ~ 2pi x 380 kHz"),
            t("atom_number", 1.3e6, "N ~ 1.3e6"),
            t("cooling_rate", 100.0, "cooling rate ~ 100 1/s"),
            t("e_folding_time", 10e-3, "1/e time ~ 10 ms"),
            t("mean_n", 0.66, "<n> ~ 0.66"),
            t("temperature_report", 12e-6, "T ~ 12 uK"),
        ],
        _ => Vec::new(),
    }
}

/// Flat map of the quantities in SI, keyed by dotted path. Used for record
/// snapshots.
pub fn si_snapshot(cfg: &ScenarioConfig) -> Result<BTreeMap<String, (f64, &'static str)>> {
    use Dimension::*;
    let mut m = BTreeMap::new();
    let mut put = |key: &str, q: &Quantity, dim: Dimension| -> Result<()> {
        m.insert(key.to_string(), (to_si(key, q, dim)?, dim.si_unit()));
        Ok(())
    };
    put("cavity.finesse", &cfg.cavity.finesse, Dimensionless)?;
    put("cavity.waist", &cfg.cavity.waist, Length)?;
    put("cavity.roundtrip_length", &cfg.cavity.roundtrip_length, Length)?;
    put("cavity.gamma_c", &cfg.cavity.gamma_c, AngularFrequency)?;
    put("species.mass", &cfg.species.mass, Mass)?;
    put("species.transition_wavelength", &cfg.species.transition_wavelength, Length)?;
    put("species.linewidth", &cfg.species.linewidth, AngularFrequency)?;
    put("drive.lattice_wavelength", &cfg.drive.lattice_wavelength, Length)?;
    put("drive.power", &cfg.drive.power, Power)?;
    put("drive.trap_depth", &cfg.drive.trap_depth, Energy)?;
    put("drive.light_shift", &cfg.drive.light_shift, AngularFrequency)?;
    put("ensemble.g_mod", &cfg.ensemble.g_mod, Dimensionless)?;
    put("ensemble.atom_number", &cfg.ensemble.atom_number, Dimensionless)?;
    put("ensemble.temperature", &cfg.ensemble.temperature, Temperature)?;
    if let Some(q) = &cfg.sideband.omega {
        put("sideband.omega", q, AngularFrequency)?;
    }
    Ok(m)
}
