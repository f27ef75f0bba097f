use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::filters::{run_filter, FilterConfig, StageConfig, TargetSignal, DEFAULT_PERIOD};
use crate::hyperbolic::{dist, exp_map, geo, gerp, log_map, transport, HPoint, HVector};

pub const VECTORS_SCHEMA_VERSION: u32 = 1;
const TRACE_STEPS: usize = 120;
const RANDOM_CASES: usize = 16;

#[derive(Debug, Clone, Serialize)]
pub struct FilterTrace {
    pub name: String,
    pub config: FilterConfig,
    pub y0: Value,
    pub target: Value,
    /// Outputs `y[1] ..= y[steps]` for a target held from `t = 0`.
    pub trace: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist_to_target: Option<Vec<f64>>,
}

/// Reference input/output tuples for the geometry kernel and filter step
/// responses, for parity checks of other implementations.
#[derive(Debug, Clone, Serialize)]
pub struct GoldenVectors {
    pub schema_version: u32,
    pub generator: String,
    pub seed: u64,
    /// Relative tolerance per component expected of a matching implementation.
    pub tolerance: f64,
    pub geometry: Vec<Value>,
    pub filters: Vec<FilterTrace>,
}

fn point<const N: usize>(u: [f64; N], v: f64) -> HPoint<N> {
    HPoint::new(u, v).expect("valid literal point")
}

fn random_point<const N: usize>(rng: &mut ChaCha8Rng) -> HPoint<N> {
    let u = std::array::from_fn(|_| rng.gen_range(-10.0..10.0));
    point(u, rng.gen_range(-6.0f64..6.0).exp2())
}

fn random_vector<const N: usize>(rng: &mut ChaCha8Rng, base: HPoint<N>) -> HVector<N> {
    let v = base.altitude();
    let du = std::array::from_fn(|_| rng.gen_range(-2.0..2.0) * v);
    HVector::new(base, du, rng.gen_range(-2.0..2.0) * v).expect("finite")
}

fn geometry_cases<const N: usize>(
    rng: &mut ChaCha8Rng,
    fixed: &[(HPoint<N>, HPoint<N>)],
    out: &mut Vec<Value>,
) {
    let mut pairs: Vec<(HPoint<N>, HPoint<N>)> = fixed.to_vec();
    pairs.extend((0..RANDOM_CASES).map(|_| (random_point(rng), random_point(rng))));
    for (x, y) in &pairs {
        let d = dist(x, y);
        out.push(json!({"op": "dist", "x": x, "y": y, "result": d}));
        out.push(json!({"op": "gerp", "x": x, "y": y, "alpha": 0.5, "result": gerp(x, y, 0.5)}));
        out.push(json!({"op": "gerp", "x": x, "y": y, "alpha": 1.25, "result": gerp(x, y, 1.25)}));
        if d > 0.0 {
            let s = 0.3 * d;
            out.push(json!({"op": "geo", "x": x, "y": y, "s": s, "result": geo(x, y, s).expect("distinct")}));
        }
        let l = log_map(x, y);
        out.push(json!({"op": "log_map", "x": x, "y": y, "result": l}));
        out.push(json!({"op": "exp_map", "vector": l, "result": exp_map(&l)}));
        let w = random_vector(rng, *x);
        out.push(json!({"op": "exp_map", "vector": w, "result": exp_map(&w)}));
        out.push(json!({"op": "transport", "vector": w, "y": y, "result": transport(&w, y)}));
    }
}

fn trace<const N: usize>(
    name: &str,
    config: FilterConfig,
    y0: HPoint<N>,
    target: HPoint<N>,
    with_dist: bool,
) -> FilterTrace {
    let duration = TRACE_STEPS as f64 * config.period;
    let (traj, _) = run_filter(&TargetSignal::constant(target), &config, duration, Some(y0))
        .expect("built-in configurations are valid");
    let samples = &traj.samples()[1..=TRACE_STEPS];
    FilterTrace {
        name: name.to_string(),
        config,
        y0: json!(y0),
        target: json!(target),
        trace: samples.iter().map(|p| json!(p)).collect(),
        dist_to_target: with_dist.then(|| samples.iter().map(|p| dist(p, &target)).collect()),
    }
}

/// Deterministic vector set; `seed` drives the random geometry cases.
pub fn golden_vectors(seed: u64) -> GoldenVectors {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut geometry = Vec::new();
    let e = std::f64::consts::E;
    geometry_cases::<1>(
        &mut rng,
        &[
            (point([0.0], 1.0), point([2.0], 1.0)),
            (point([0.0], 1.0), point([0.0], e)),
            (point([0.0], 1.0), point([0.0], 2.0)),
            (point([-3.0], 1e-3), point([5.0], 1e3)),
        ],
        &mut geometry,
    );
    geometry_cases::<2>(
        &mut rng,
        &[(point([0.0, 0.0], 1.0), point([2.0, 0.0], 1.0))],
        &mut geometry,
    );

    let t = DEFAULT_PERIOD;
    let alpha = crate::filters::DEFAULT_ALPHA;
    let (y0, far) = (point([0.0], 1.0), point([3.0], 0.25));
    let two_pole = |zeta: f64| FilterConfig::two_pole(12.0, zeta, t);
    let filters = vec![
        trace(
            "one_pole",
            FilterConfig::cascaded(alpha, 1, t),
            y0,
            far,
            true,
        ),
        trace(
            "cascaded",
            FilterConfig::cascaded(alpha, 4, t),
            y0,
            far,
            false,
        ),
        trace(
            "clipped_one_pole",
            FilterConfig::new(vec![StageConfig::ClippedOnePole { alpha, c: 1.0 }], t),
            y0,
            far,
            true,
        ),
        trace(
            "clipped_cascaded",
            FilterConfig::reference_default(),
            y0,
            far,
            false,
        ),
        trace("two_pole_critical", two_pole(1.0), y0, far, false),
        trace("two_pole_underdamped", two_pole(0.5), y0, far, false),
        trace(
            "clipped_two_pole",
            FilterConfig::clipped_two_pole(1.0, alpha, 12.0, 1.0, t),
            y0,
            far,
            false,
        ),
        trace(
            "clipped_cascaded_2d",
            FilterConfig::reference_default(),
            point([0.0, 0.0], 1.0),
            point([3.0, -1.0], 0.25),
            false,
        ),
    ];
    GoldenVectors {
        schema_version: VECTORS_SCHEMA_VERSION,
        generator: format!("hyperzoom {}", env!("CARGO_PKG_VERSION")),
        seed,
        tolerance: 1e-6,
        geometry,
        filters,
    }
}
