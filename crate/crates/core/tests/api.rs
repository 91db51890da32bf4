mod common;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use chemhull::api::{router, ServiceConfig};
use chemhull::edgetype::Point3;
use chemhull::hull::Facet;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use common::assert_valid;

fn app() -> Router {
    router(ServiceConfig::default())
}

async fn send(app: Router, req: Request<Body>) -> (StatusCode, String, Vec<u8>) {
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    let ctype = resp
        .headers()
        .get("content-type")
        .map(|v| v.to_str().unwrap().to_string())
        .unwrap_or_default();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, ctype, bytes)
}

async fn get(uri: &str) -> (StatusCode, Value) {
    let (status, _, body) = send(app(), Request::get(uri).body(Body::empty()).unwrap()).await;
    (status, serde_json::from_slice(&body).unwrap_or(Value::Null))
}

async fn post(uri: &str, body: Value) -> (StatusCode, Value) {
    let req = Request::post(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let (status, _, body) = send(app(), req).await;
    (status, serde_json::from_slice(&body).unwrap())
}

fn assert_error(status: StatusCode, body: &Value, expect: StatusCode, code: &str) {
    assert_eq!(status, expect, "{body}");
    assert_valid("error", body);
    assert_eq!(body["code"], code);
}

#[tokio::test]
async fn polytope_p88() {
    let (status, body) = get("/api/polytope?n=8&m=8").await;
    assert_eq!(status, StatusCode::OK);
    assert_valid("polytope", &body);
    assert_eq!(body["dim"], 3);
    assert_eq!(body["vertices"].as_array().unwrap().len(), 7);
    assert_eq!(body["facets"].as_array().unwrap().len(), 8);
    // every vertex satisfies every facet
    let facets: Vec<Facet> = serde_json::from_value(body["facets"].clone()).unwrap();
    for v in body["vertices"].as_array().unwrap() {
        let p = Point3::new(
            v["m12"].as_i64().unwrap(),
            v["m13"].as_i64().unwrap(),
            v["m33"].as_i64().unwrap(),
        );
        assert!(facets.iter().all(|f| f.is_satisfied(p)));
    }
}

#[tokio::test]
async fn polytope_single_point_and_errors() {
    let (status, body) = get("/api/polytope?n=4&m=5").await;
    assert_eq!(status, StatusCode::OK);
    assert_valid("polytope", &body);
    assert_eq!(body["dim"], 0);
    let v = &body["vertices"][0];
    assert_eq!(
        [&v["m12"], &v["m13"], &v["m22"], &v["m23"], &v["m33"]],
        [&json!(0), &json!(0), &json!(0), &json!(4), &json!(1)]
    );
    let (status, body) = get("/api/polytope?n=3&m=5").await;
    assert_error(status, &body, StatusCode::UNPROCESSABLE_ENTITY, "invalid_pair");
    let (status, body) = get("/api/polytope?n=8").await;
    assert_error(status, &body, StatusCode::UNPROCESSABLE_ENTITY, "invalid_pair");
    let (status, body) = get("/api/polytope?n=eight&m=8").await;
    assert_error(status, &body, StatusCode::UNPROCESSABLE_ENTITY, "invalid_pair");
}

#[tokio::test]
async fn optimize_endpoint() {
    let (status, body) = post(
        "/api/optimize",
        json!({"n": 8, "m": 8, "index": {"preset": "randic"}, "sense": "min"}),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_valid("optimization", &body);
    let arg = body["arg_points"].as_array().unwrap();
    assert_eq!(arg.len(), 1);
    assert_eq!(arg[0]["name"], "P88-V4");
    assert_eq!((arg[0]["m13"].as_i64(), arg[0]["m33"].as_i64()), (Some(4), Some(4)));
    let expected = 4.0 / 3f64.sqrt() + 4.0 / 3.0;
    assert!((body["optimal_value"].as_f64().unwrap() - expected).abs() < 1e-9);

    let (status, body) = post(
        "/api/optimize",
        json!({"n": 8, "m": 8, "index": {"formula": "i+j"}, "sense": "max"}),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_valid("optimization", &body);
    assert!(body["optimal_value"].as_f64().unwrap().is_finite());

    let (status, body) = post(
        "/api/optimize",
        json!({"n": 8, "m": 8, "index": {"formula": "1/(i-j"}, "sense": "min"}),
    )
    .await;
    assert_error(status, &body, StatusCode::BAD_REQUEST, "bad_formula");
    assert_eq!(body["detail"]["position"], 6);

    let (status, body) = post(
        "/api/optimize",
        json!({"n": 8, "m": 8, "index": {"coeffs": {"c12": 1, "c13": 2, "c22": 3, "c23": 4, "c33": 5}}, "sense": "max"}),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{body}");
    let (status, body) = post(
        "/api/optimize",
        json!({"n": 8, "m": 30, "index": {"preset": "randic"}, "sense": "max"}),
    )
    .await;
    assert_error(status, &body, StatusCode::UNPROCESSABLE_ENTITY, "invalid_pair");
    let (status, body) = post(
        "/api/optimize",
        json!({"n": 8, "m": 8, "index": {"preset": "nope"}, "sense": "max"}),
    )
    .await;
    assert_error(status, &body, StatusCode::BAD_REQUEST, "bad_formula");
    let (status, body) = post("/api/optimize", json!({"n": 8, "m": 8, "sense": "max"})).await;
    assert_error(status, &body, StatusCode::BAD_REQUEST, "bad_request");
}

#[tokio::test]
async fn first_zagreb_matches_degree_squares() {
    let pair = chemhull::edgetype::ValidPair::new(8, 8).unwrap();
    let (_, body) = post(
        "/api/optimize",
        json!({"n": 8, "m": 8, "index": {"preset": "first_zagreb"}, "sense": "max"}),
    )
    .await;
    for c in body["candidates"].as_array().unwrap() {
        let p = Point3::new(
            c["m12"].as_i64().unwrap(),
            c["m13"].as_i64().unwrap(),
            c["m33"].as_i64().unwrap(),
        );
        let [n1, n2, n3] = chemhull::edgetype::complete_point(pair, p).unwrap().vertex_counts();
        let z1 = (n1 + 4 * n2 + 9 * n3) as f64;
        assert!((c["value"].as_f64().unwrap() - z1).abs() < 1e-9, "{c}");
    }
}

#[tokio::test]
async fn graph_endpoint() {
    let (status, body) = get("/api/graph?n=8&m=8&m12=0&m13=4&m33=4").await;
    assert_eq!(status, StatusCode::OK);
    assert_valid("graph", &body);
    assert_eq!(body["counts"], json!([0, 4, 0, 0, 4]));
    assert_eq!(body["edges"].as_array().unwrap().len(), 8);

    let (status, body) = get("/api/graph?n=8&m=8&m12=0&m13=0&m33=0").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["counts"], json!([0, 0, 8, 0, 0]));

    let (status, body) = get("/api/graph?n=8&m=8&m12=3&m13=0&m33=0").await;
    assert_error(status, &body, StatusCode::UNPROCESSABLE_ENTITY, "invalid_pair");

    let req = Request::get("/api/graph?n=8&m=8&m12=0&m13=4&m33=4&format=dot")
        .body(Body::empty())
        .unwrap();
    let (status, ctype, body) = send(app(), req).await;
    assert_eq!(status, StatusCode::OK);
    assert!(ctype.starts_with("text/vnd.graphviz"));
    assert!(String::from_utf8(body).unwrap().starts_with("graph G {"));
}

#[tokio::test]
async fn unrealizable_point_is_404() {
    // consistent with the counting identities but not realizable; see the realizer tests
    let truth =
        chemhull::oracle::realizable_points(chemhull::edgetype::ValidPair::new(7, 7).unwrap(), Default::default())
            .unwrap();
    let p = (0..=7)
        .flat_map(|a| (0..=7).flat_map(move |b| (0..=7).map(move |c| Point3::new(a, b, c))))
        .find(|&p| {
            chemhull::edgetype::complete_point(chemhull::edgetype::ValidPair::new(7, 7).unwrap(), p).is_ok()
                && !truth.realizable_points.contains(&p)
        })
        .expect("(7,7) has a consistent unrealizable point");
    let uri = format!("/api/graph?n=7&m=7&m12={}&m13={}&m33={}", p.m12, p.m13, p.m33);
    let (status, body) = get(&uri).await;
    assert_error(status, &body, StatusCode::NOT_FOUND, "unrealizable");
    assert_eq!(body["detail"]["reason"], "proven_unrealizable");
}

#[tokio::test]
async fn identical_requests_identical_bodies() {
    let uri = "/api/graph?n=12&m=14&m12=1&m13=2&m33=3";
    let a = send(app(), Request::get(uri).body(Body::empty()).unwrap()).await;
    let b = send(app(), Request::get(uri).body(Body::empty()).unwrap()).await;
    assert_eq!(a, b);
    let shared = app();
    let c = send(
        shared.clone(),
        Request::get("/api/polytope?n=9&m=10").body(Body::empty()).unwrap(),
    )
    .await;
    let d = send(
        shared,
        Request::get("/api/polytope?n=9&m=10").body(Body::empty()).unwrap(),
    )
    .await;
    assert_eq!(c, d);
}

#[tokio::test]
async fn concurrent_first_requests_agree() {
    let shared = app();
    let mut handles = Vec::new();
    for _ in 0..16 {
        let app = shared.clone();
        handles.push(tokio::spawn(async move {
            send(
                app,
                Request::get("/api/polytope?n=20&m=25").body(Body::empty()).unwrap(),
            )
            .await
        }));
    }
    let mut bodies = Vec::new();
    for h in handles {
        bodies.push(h.await.unwrap());
    }
    assert!(bodies.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(bodies[0].0, StatusCode::OK);
}

#[tokio::test]
async fn presets_and_health() {
    let (status, body) = get("/api/presets").await;
    assert_eq!(status, StatusCode::OK);
    assert_valid("presets", &body);
    let names: Vec<&str> = body
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    for n in ["randic", "sombor", "reduced_sombor", "abs", "generalized_randic"] {
        assert!(names.contains(&n), "{n}");
    }
    let abs = body.as_array().unwrap().iter().find(|p| p["name"] == "abs").unwrap();
    assert_eq!(abs["formula"], "sqrt((i+j-2)/(i+j))");

    let (status, _, body) = send(app(), Request::get("/api/health").body(Body::empty()).unwrap()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, b"ok");
    let (status, body) = get("/api/nothing").await;
    assert_error(status, &body, StatusCode::NOT_FOUND, "not_found");
}

#[tokio::test]
async fn cors_headers_present() {
    let req = Request::get("/api/health")
        .header("origin", "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let resp = app().oneshot(req).await.unwrap();
    assert!(resp.headers().contains_key("access-control-allow-origin"));
}
