use std::path::Path;

use serde::Deserialize;

use super::{read_file, HarnessError};
use crate::filters::{
    EasingFunction, FilterConfig, StageConfig, StepEvent, TargetSignal, Technique, DEFAULT_PERIOD,
};
use crate::hyperbolic::HPoint;
use crate::uw::{camera_from_span, Viewport};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: String,
    dimension: usize,
    #[serde(default)]
    viewport: Option<RawViewport>,
    duration: f64,
    rate: f64,
    events: Vec<RawEvent>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawViewport {
    theta_deg: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvent {
    t: f64,
    #[serde(default)]
    camera: Option<RawCamera>,
    #[serde(default)]
    span: Option<RawSpan>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCamera {
    u: Vec<f64>,
    v: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpan {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

/// Flag values that replace scenario fields before validation.
#[derive(Debug, Clone, Default)]
pub struct ScenarioOverrides {
    pub rate: Option<f64>,
    pub duration: Option<f64>,
    pub theta_deg: Option<f64>,
}

/// A scripted target signal with its sampling setup.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario<const N: usize> {
    pub name: String,
    pub viewport: Viewport<N>,
    pub duration: f64,
    pub rate: f64,
    pub signal: TargetSignal<N>,
}

impl<const N: usize> Scenario<N> {
    pub fn period(&self) -> f64 {
        1.0 / self.rate
    }

    /// Raw target at every output sample.
    pub fn targets(&self, count: usize) -> Vec<HPoint<N>> {
        (0..count)
            .map(|i| self.signal.at_sample(i, self.period()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyScenario {
    One(Scenario<1>),
    Two(Scenario<2>),
}

impl AnyScenario {
    pub fn name(&self) -> &str {
        match self {
            AnyScenario::One(s) => &s.name,
            AnyScenario::Two(s) => &s.name,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            AnyScenario::One(_) => 1,
            AnyScenario::Two(_) => 2,
        }
    }
}

fn positive(field: &str, x: f64) -> Result<f64, HarnessError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(HarnessError::validation(
            field,
            format!("must be positive, got {x}"),
        ))
    }
}

fn array<const N: usize>(field: &str, xs: &[f64]) -> Result<[f64; N], HarnessError> {
    if xs.len() != N {
        return Err(HarnessError::validation(
            field,
            format!("has {} entries, dimension is {N}", xs.len()),
        ));
    }
    if let Some(k) = xs.iter().position(|x| !x.is_finite()) {
        return Err(HarnessError::validation(
            format!("{field}[{k}]"),
            "must be finite",
        ));
    }
    Ok(std::array::from_fn(|k| xs[k]))
}

fn viewport<const N: usize>(
    raw: Option<&RawViewport>,
    theta_override: Option<f64>,
) -> Result<Viewport<N>, HarnessError> {
    let degrees: Vec<f64> = match (theta_override, raw) {
        (Some(t), _) => vec![t],
        (None, Some(r)) => r.theta_deg.clone(),
        (None, None) => return Ok(Viewport::default()),
    };
    let field = if theta_override.is_some() {
        "--theta"
    } else {
        "viewport.theta_deg"
    };
    let deg: [f64; N] = match degrees.len() {
        1 => [degrees[0]; N],
        n if n == N => std::array::from_fn(|k| degrees[k]),
        n => {
            return Err(HarnessError::validation(
                field,
                format!("has {n} entries, expected 1 or {N}"),
            ))
        }
    };
    for (k, d) in deg.iter().enumerate() {
        if !(*d > 0.0 && *d < 180.0) {
            return Err(HarnessError::validation(
                format!("{field}[{k}]"),
                format!("angle of view must lie in (0, 180) degrees, got {d}"),
            ));
        }
    }
    Viewport::new(deg.map(f64::to_radians))
        .map_err(|e| HarnessError::validation(field, e.to_string()))
}

fn build<const N: usize>(
    raw: &RawScenario,
    overrides: &ScenarioOverrides,
) -> Result<Scenario<N>, HarnessError> {
    let rate = positive(
        if overrides.rate.is_some() {
            "--rate"
        } else {
            "rate"
        },
        overrides.rate.unwrap_or(raw.rate),
    )?;
    let duration = positive(
        if overrides.duration.is_some() {
            "--duration"
        } else {
            "duration"
        },
        overrides.duration.unwrap_or(raw.duration),
    )?;
    let viewport = viewport::<N>(raw.viewport.as_ref(), overrides.theta_deg)?;
    if raw.events.is_empty() {
        return Err(HarnessError::validation(
            "events",
            "at least one event is required",
        ));
    }
    let mut events = Vec::with_capacity(raw.events.len());
    for (i, ev) in raw.events.iter().enumerate() {
        let field = |name: &str| format!("events[{i}].{name}");
        if !ev.t.is_finite() || ev.t < 0.0 || ev.t > duration {
            return Err(HarnessError::validation(
                field("t"),
                format!("must lie in [0, duration = {duration}], got {}", ev.t),
            ));
        }
        if i == 0 && ev.t != 0.0 {
            return Err(HarnessError::validation(
                field("t"),
                "first event must be at t = 0",
            ));
        }
        if i > 0 && !(ev.t > raw.events[i - 1].t) {
            return Err(HarnessError::validation(
                field("t"),
                format!(
                    "event times must increase strictly, got {} after {}",
                    ev.t,
                    raw.events[i - 1].t
                ),
            ));
        }
        let target = match (&ev.camera, &ev.span) {
            (Some(c), None) => {
                let u = array::<N>(&field("camera.u"), &c.u)?;
                HPoint::new(u, c.v)
                    .map_err(|e| HarnessError::validation(field("camera.v"), e.to_string()))?
            }
            (None, Some(s)) => {
                let lo = array::<N>(&field("span.lo"), &s.lo)?;
                let hi = array::<N>(&field("span.hi"), &s.hi)?;
                camera_from_span(&lo, &hi, &viewport)
                    .map_err(|e| HarnessError::validation(field("span"), e.to_string()))?
            }
            _ => {
                return Err(HarnessError::validation(
                    format!("events[{i}]"),
                    "exactly one of `camera` or `span` is required",
                ))
            }
        };
        events.push(StepEvent { t: ev.t, target });
    }
    let signal = TargetSignal::steps(events)
        .map_err(|e| HarnessError::validation("events", e.to_string()))?;
    Ok(Scenario {
        name: raw.name.clone(),
        viewport,
        duration,
        rate,
        signal,
    })
}

/// Parses and validates a scenario document. `path` is only used in messages.
pub fn parse_scenario(
    text: &str,
    path: &Path,
    overrides: &ScenarioOverrides,
) -> Result<AnyScenario, HarnessError> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    if raw.name.trim().is_empty() {
        return Err(HarnessError::validation("name", "must not be empty"));
    }
    match raw.dimension {
        1 => build::<1>(&raw, overrides).map(AnyScenario::One),
        2 => build::<2>(&raw, overrides).map(AnyScenario::Two),
        d => Err(HarnessError::validation(
            "dimension",
            format!("must be 1 or 2, got {d}"),
        )),
    }
}

pub fn load_scenario(
    path: &Path,
    overrides: &ScenarioOverrides,
) -> Result<AnyScenario, HarnessError> {
    parse_scenario(&read_file(path)?, path, overrides)
}

/// Built-in technique names accepted wherever a technique file is.
pub const BUILTIN_TECHNIQUES: [&str; 6] = [
    "constant_speed",
    "easing",
    "cascaded",
    "clipped_cascaded",
    "two_pole",
    "clipped_two_pole",
];

/// The four techniques of the interruption comparison.
pub const DEFAULT_COMPARE_SET: [&str; 4] =
    ["constant_speed", "easing", "cascaded", "clipped_cascaded"];

const BUILTIN_OMEGA0: f64 = 12.0;
const BUILTIN_ZETA: f64 = 1.0;

pub fn builtin_technique(name: &str) -> Option<Technique> {
    let defaults = FilterConfig::reference_default();
    let alpha = crate::filters::DEFAULT_ALPHA;
    let c = crate::filters::DEFAULT_SPEED_LIMIT;
    let stages = match name {
        "constant_speed" => return Some(Technique::ConstantSpeed { speed: c }),
        "easing" => {
            return Some(Technique::Easing {
                duration: 1.0,
                function: EasingFunction::Cosine,
            })
        }
        "cascaded" => FilterConfig::cascaded(alpha, 4, DEFAULT_PERIOD).stages,
        "clipped_cascaded" => defaults.stages,
        "two_pole" => vec![StageConfig::TwoPole {
            omega0: BUILTIN_OMEGA0,
            zeta: BUILTIN_ZETA,
        }],
        "clipped_two_pole" => {
            FilterConfig::clipped_two_pole(c, alpha, BUILTIN_OMEGA0, BUILTIN_ZETA, DEFAULT_PERIOD)
                .stages
        }
        _ => return None,
    };
    Some(Technique::Filter { stages })
}

pub fn parse_technique(text: &str, path: &Path) -> Result<Technique, HarnessError> {
    serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// A technique from a built-in name or a technique JSON file. Returns the
/// display name (the built-in name or the file stem) with it.
pub fn load_technique(name_or_path: &str) -> Result<(String, Technique), HarnessError> {
    if let Some(t) = builtin_technique(name_or_path) {
        return Ok((name_or_path.to_string(), t));
    }
    let path = Path::new(name_or_path);
    if path.is_file() {
        let name = path
            .file_stem()
            .map_or_else(|| name_or_path.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok((name, parse_technique(&read_file(path)?, path)?));
    }
    Err(HarnessError::validation(
        "--filter",
        format!(
            "unknown technique `{name_or_path}`: not a file, and not one of {}",
            BUILTIN_TECHNIQUES.join(", ")
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_EVENTS: &str = r#"{
        "name": "t", "dimension": 1, "duration": 2, "rate": 60,
        "events": [
            {"t": 0, "camera": {"u": [0], "v": 1}},
            {"t": 0.5, "span": {"lo": [0], "hi": [4]}}
        ]
    }"#;

    fn parse(text: &str) -> Result<AnyScenario, HarnessError> {
        parse_scenario(text, Path::new("s.json"), &ScenarioOverrides::default())
    }

    fn field_of(text: &str) -> String {
        match parse(text) {
            Err(HarnessError::Validation { field, .. }) => field,
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn parses_camera_and_span_targets() {
        let AnyScenario::One(s) = parse(TWO_EVENTS).unwrap() else {
            panic!("dimension")
        };
        let ev = s.signal.events();
        assert_eq!(*ev[1].target.footprint(), [2.0]);
        assert!((ev[1].target.altitude() - 2.0).abs() < 1e-12);
        assert_eq!(s.period(), 1.0 / 60.0);
    }

    #[test]
    fn field_precise_errors() {
        assert_eq!(
            field_of(&TWO_EVENTS.replace("\"rate\": 60", "\"rate\": 0")),
            "rate"
        );
        assert_eq!(
            field_of(&TWO_EVENTS.replace("\"dimension\": 1", "\"dimension\": 3")),
            "dimension"
        );
        assert_eq!(
            field_of(&TWO_EVENTS.replace("\"v\": 1", "\"v\": -1")),
            "events[0].camera.v"
        );
        assert_eq!(
            field_of(&TWO_EVENTS.replace("\"u\": [0]", "\"u\": [0, 1]")),
            "events[0].camera.u"
        );
        assert_eq!(
            field_of(&TWO_EVENTS.replace("\"hi\": [4]", "\"hi\": [-4]")),
            "events[1].span"
        );
        assert_eq!(
            field_of(&TWO_EVENTS.replace("\"t\": 0.5", "\"t\": 5")),
            "events[1].t"
        );
        assert_eq!(
            field_of(&TWO_EVENTS.replace("\"t\": 0,", "\"t\": 0.1,")),
            "events[0].t"
        );
        assert_eq!(
            field_of(&TWO_EVENTS.replace(
                "\"dimension\": 1,",
                "\"dimension\": 1, \"viewport\": {\"theta_deg\": [190]},"
            )),
            "viewport.theta_deg[0]"
        );
        assert!(matches!(parse("{"), Err(HarnessError::Parse { .. })));
        assert!(matches!(
            parse(&TWO_EVENTS.replace("\"rate\"", "\"bogus\": 1, \"rate\"")),
            Err(HarnessError::Parse { .. })
        ));
    }

    #[test]
    fn overrides_apply_before_validation() {
        let o = ScenarioOverrides {
            rate: Some(120.0),
            duration: Some(1.0),
            theta_deg: Some(60.0),
        };
        let AnyScenario::One(s) = parse_scenario(TWO_EVENTS, Path::new("s"), &o).unwrap() else {
            panic!()
        };
        assert_eq!(s.rate, 120.0);
        assert!((s.viewport.theta()[0] - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
        let bad = ScenarioOverrides {
            rate: Some(-1.0),
            ..Default::default()
        };
        match parse_scenario(TWO_EVENTS, Path::new("s"), &bad) {
            Err(HarnessError::Validation { field, .. }) => assert_eq!(field, "--rate"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn builtins_validate_and_unknown_names_list_choices() {
        for name in BUILTIN_TECHNIQUES {
            builtin_technique(name)
                .unwrap()
                .validate(DEFAULT_PERIOD)
                .unwrap();
        }
        let err = load_technique("warp_drive").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("clipped_cascaded"));
    }
}
