//! Stateless JSON evaluation service.
//!
//! - `POST /evaluate` takes `{positions, mechanism?, lambda?}` and returns an
//!   [`EvaluationReport`].
//! - `GET /constants` returns `alpha`, `sc_bound` and the hypothesis table.
//! - `POST /dual-drag` takes `{positions, agents: [i, j], displacement,
//!   mechanism?, lambda?}` and moves two agents so that the optimal cost is
//!   unchanged while the optimum and the distance orientations stay put.
//!
//! Agent labels in requests and responses are 1-based.

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use serde_json::{json, Map, Value};
use tower_http::cors::CorsLayer;

use crate::circle::{CirclePoint, Instance};
use crate::error::Error;
use crate::mechanism::Mechanism;
use crate::optimum::optimum;
use crate::ratio::{gamma_hypothesis, ALPHA, SC_BOUND};
use crate::report::{normalize_positions, EvaluationReport};

/// Tolerance for the opt-preservation flag and for touching neighbours.
const DRAG_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub status: StatusCode,
    pub field: Option<&'static str>,
    pub message: String,
}

impl ApiError {
    fn field(field: &'static str, message: impl Into<String>) -> Self {
        Self { status: StatusCode::BAD_REQUEST, field: Some(field), message: message.into() }
    }

    fn core(field: &'static str, e: Error) -> Self {
        let status = match e {
            Error::EvenAgentCount(_) | Error::TooFewAgents(_) => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        };
        Self { status, field: Some(field), message: e.to_string() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": self.message, "field": self.field });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = std::result::Result<T, ApiError>;

fn parse_object(body: &[u8]) -> ApiResult<Map<String, Value>> {
    match serde_json::from_slice::<Value>(body) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(ApiError::field("body", "request body must be a JSON object")),
        Err(e) => Err(ApiError::field("body", format!("invalid JSON: {e}"))),
    }
}

fn parse_instance(obj: &Map<String, Value>) -> ApiResult<Instance> {
    let arr = match obj.get("positions") {
        Some(Value::Array(a)) => a,
        Some(_) => return Err(ApiError::field("positions", "positions must be an array of numbers")),
        None => return Err(ApiError::field("positions", "positions is required")),
    };
    let values = arr
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_f64()
                .ok_or_else(|| ApiError::field("positions", format!("positions[{i}] is not a number")))
        })
        .collect::<ApiResult<Vec<f64>>>()?;
    let (pts, _) = normalize_positions(&values).map_err(|e| ApiError::core("positions", e))?;
    Instance::canonicalize(&pts).map_err(|e| ApiError::core("positions", e))
}

fn parse_mechanism(obj: &Map<String, Value>) -> ApiResult<Mechanism> {
    let lambda = match obj.get("lambda") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_f64().ok_or_else(|| ApiError::field("lambda", "lambda must be a number"))?),
    };
    let name = match obj.get("mechanism") {
        None | Some(Value::Null) => "pcd",
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(ApiError::field("mechanism", "mechanism must be a string")),
    };
    match name {
        "pcd" => Ok(Mechanism::Pcd),
        "rd" => Ok(Mechanism::RandomDictator),
        "mix" => Mechanism::mixture(lambda.unwrap_or(1.0)).map_err(|e| ApiError::core("lambda", e)),
        other => Err(ApiError::field("mechanism", format!("unknown mechanism '{other}', expected pcd, rd or mix"))),
    }
}

/// Evaluates a request body; also used by the CLI-equivalence tests.
pub fn evaluate_body(body: &[u8]) -> ApiResult<EvaluationReport> {
    let obj = parse_object(body)?;
    let inst = parse_instance(&obj)?;
    let mech = parse_mechanism(&obj)?;
    Ok(EvaluationReport::new(&inst, &mech))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualDragReport {
    #[serde(flatten)]
    pub report: EvaluationReport,
    pub preserved_opt: bool,
}

fn parse_agent(v: &Value, n: usize) -> ApiResult<usize> {
    let k = v.as_u64().ok_or_else(|| ApiError::field("agents", "agent labels must be positive integers"))?;
    if k == 0 || k as usize > n {
        return Err(ApiError::field("agents", format!("agent label {k} is outside 1..={n}")));
    }
    Ok(k as usize - 1)
}

/// Moves agent `i` by `d` and agent `j` by `-s_i s_j d`, where `s_k` is +1
/// when agent `k` lies clockwise of the optimum within half a turn.
pub fn dual_drag(inst: &Instance, i: usize, j: usize, d: f64, mech: &Mechanism) -> ApiResult<DualDragReport> {
    let n = inst.len();
    if i == j {
        return Err(ApiError::field("agents", "the two agents must differ"));
    }
    if !d.is_finite() {
        return Err(ApiError::field("displacement", "displacement must be a finite number"));
    }
    let before = optimum(inst);
    let o = inst.position(before.agent);
    let side = |k: usize| if o.clockwise_to(inst.position(k)) < 0.5 { 1.0 } else { -1.0 };
    let mut delta = vec![0.0; n];
    delta[i] = d;
    delta[j] = -side(i) * side(j) * d;
    let gaps = inst.consecutive_arcs();
    let mut pts: Vec<CirclePoint> = (0..n).map(|k| inst.position(k).offset(delta[k])).collect();
    for k in 0..n {
        let next = (k + 1) % n;
        let gap = gaps[k] + delta[next] - delta[k];
        if gap < -DRAG_TOLERANCE {
            return Err(ApiError::field(
                "displacement",
                format!("agents {} and {} would cross", k + 1, next + 1),
            ));
        }
        if gap <= 0.0 {
            pts[next] = pts[k];
        }
    }
    let moved = Instance::from_cyclic(pts).map_err(|e| ApiError::core("displacement", e))?;
    let report = EvaluationReport::new(&moved, mech);
    let preserved_opt = (report.opt_cost - before.cost).abs() <= DRAG_TOLERANCE;
    Ok(DualDragReport { report, preserved_opt })
}

pub fn dual_drag_body(body: &[u8]) -> ApiResult<DualDragReport> {
    let obj = parse_object(body)?;
    let inst = parse_instance(&obj)?;
    let mech = parse_mechanism(&obj)?;
    let pair = match obj.get("agents") {
        Some(Value::Array(a)) if a.len() == 2 => a,
        _ => return Err(ApiError::field("agents", "agents must be an array of two labels")),
    };
    let i = parse_agent(&pair[0], inst.len())?;
    let j = parse_agent(&pair[1], inst.len())?;
    let d = match obj.get("displacement") {
        Some(v) => v.as_f64().ok_or_else(|| ApiError::field("displacement", "displacement must be a number"))?,
        None => return Err(ApiError::field("displacement", "displacement is required")),
    };
    dual_drag(&inst, i, j, d, &mech)
}

/// Static constants: `alpha`, `sc_bound`, and the hypothesis for odd
/// `n` in 5..=101 keyed by `n`.
pub fn constants() -> Value {
    let table: Map<String, Value> = (5..=101)
        .step_by(2)
        .map(|n| (n.to_string(), json!(gamma_hypothesis(n).expect("odd n >= 5"))))
        .collect();
    json!({ "alpha": ALPHA, "sc_bound": SC_BOUND, "hypothesis": table })
}

fn json_response<T: Serialize>(value: &T) -> Response {
    let body = serde_json::to_string(value).expect("serializable");
    ([(header::CONTENT_TYPE, "application/json")], body).into_response()
}

async fn evaluate_handler(body: Bytes) -> Response {
    match evaluate_body(&body) {
        Ok(r) => ([(header::CONTENT_TYPE, "application/json")], r.to_json()).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn dual_drag_handler(body: Bytes) -> Response {
    match dual_drag_body(&body) {
        Ok(r) => json_response(&r),
        Err(e) => e.into_response(),
    }
}

async fn constants_handler() -> Response {
    let mut r = json_response(&constants());
    r.headers_mut()
        .insert(header::CACHE_CONTROL, "public, max-age=86400".parse().expect("valid header"));
    r
}

pub fn router() -> Router {
    Router::new()
        .route("/evaluate", post(evaluate_handler))
        .route("/dual-drag", post(dual_drag_handler))
        .route("/constants", get(constants_handler))
        .layer(CorsLayer::permissive())
}

/// Serves until interrupted.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router())
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORST: &str = r#"{"positions":[0,0,0.2928932188134524,0.7928932188134524,0.7928932188134524]}"#;

    #[test]
    fn evaluate_examples() {
        let r = evaluate_body(WORST.as_bytes()).unwrap();
        assert_eq!(r.opt_index, 1);
        assert!((r.gamma - ALPHA).abs() < 1e-9);
        let r = evaluate_body(br#"{"positions":[0,0.2,0.4,0.6,0.8],"mechanism":"pcd"}"#).unwrap();
        assert!((r.gamma - 1.0).abs() < 1e-12);
        assert!((r.sc - 1.2).abs() < 1e-12);
        let e = evaluate_body(br#"{"positions":[0,0.2,0.4,0.6]}"#).unwrap_err();
        assert_eq!(e.status, StatusCode::UNPROCESSABLE_ENTITY);
        let e = evaluate_body(br#"{"positions":[0,"x",0.4]}"#).unwrap_err();
        assert_eq!((e.status, e.field), (StatusCode::BAD_REQUEST, Some("positions")));
        let e = evaluate_body(br#"{"positions":[0,0.1,0.4],"mechanism":"mix","lambda":2}"#).unwrap_err();
        assert_eq!(e.field, Some("lambda"));
    }

    #[test]
    fn dual_drag_examples() {
        let body = |agents: &str, d: f64| {
            format!(
                r#"{{"positions":[0,0,0.2928932188134524,0.7928932188134524,0.7928932188134524],"agents":{agents},"displacement":{d}}}"#
            )
        };
        let base = evaluate_body(WORST.as_bytes()).unwrap();
        let r = dual_drag_body(body("[3,5]", 0.01).as_bytes()).unwrap();
        assert!(r.preserved_opt);
        assert!((r.report.sc - base.sc).abs() > 1e-6);
        let r = dual_drag_body(body("[3,5]", 0.0).as_bytes()).unwrap();
        assert_eq!(r.report, base);
        let e = dual_drag_body(body("[2,2]", 0.01).as_bytes()).unwrap_err();
        assert_eq!(e.status, StatusCode::BAD_REQUEST);
        let e = dual_drag_body(body("[3,5]", -0.4).as_bytes()).unwrap_err();
        assert_eq!(e.field, Some("displacement"));
    }

    #[test]
    fn constants_table() {
        let c = constants();
        assert_eq!(c["sc_bound"], json!(1.2));
        assert!((c["alpha"].as_f64().unwrap() - 1.343_145_750_5).abs() < 1e-10);
        assert!((c["hypothesis"]["7"].as_f64().unwrap() - 1.401_924).abs() < 1e-6);
        assert_eq!(c["hypothesis"].as_object().unwrap().len(), 49);
    }
}
