//! Calls the evaluation service in-process; `cml serve` exposes the same router.

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(method: &str, uri: &str, body: Value) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(if body.is_null() { Body::empty() } else { Body::from(body.to_string()) })
        .unwrap();
    let resp = cml::service::router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

#[tokio::main]
async fn main() {
    let worst = json!([0, 0, 0.2928932188134524, 0.7928932188134524, 0.7928932188134524]);

    let (status, v) = call("POST", "/evaluate", json!({ "positions": worst, "mechanism": "pcd" })).await;
    println!("POST /evaluate    {status}  gamma {} sc {} opt {}", v["gamma"], v["sc"], v["opt_cost"]);

    let (status, v) = call("POST", "/evaluate", json!({ "positions": [0, 0.25, 0.5, 0.75] })).await;
    println!("POST /evaluate    {status}  {}", v["error"]);

    let (status, v) = call("GET", "/constants", Value::Null).await;
    println!("GET /constants    {status}  alpha {} hypothesis(7) {}", v["alpha"], v["hypothesis"]["7"]);

    let drag = json!({ "positions": worst, "agents": [3, 5], "displacement": 0.01 });
    let (status, v) = call("POST", "/dual-drag", drag).await;
    println!(
        "POST /dual-drag   {status}  preserved_opt {} opt {} sc {}",
        v["preserved_opt"], v["opt_cost"], v["sc"]
    );
}
