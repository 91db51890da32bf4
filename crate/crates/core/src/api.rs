//! HTTP/JSON service over the catalog, hull, index engine and realizer.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use lru::LruCache;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::OnceCell;
use tower_http::cors::CorsLayer;

use crate::edgetype::{Point3, ValidPair};
use crate::index::{optimize_with_tolerance, preset_descriptors, IndexError, IndexRequest, Sense, DEFAULT_TOLERANCE};
use crate::realizer::{realize, RealizeBudget, RealizeError};
use crate::views::{GraphView, OptimizationView, PolytopeView};

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub cache_capacity: usize,
    /// Per request; the service never searches beyond it.
    pub realize_budget: RealizeBudget,
    pub tolerance: f64,
    /// Allowed browser origins; empty allows any.
    pub cors_origins: Vec<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            cache_capacity: 256,
            realize_budget: RealizeBudget::default(),
            tolerance: DEFAULT_TOLERANCE,
            cors_origins: Vec::new(),
        }
    }
}

type PolytopeCell = Arc<OnceCell<Arc<PolytopeView>>>;

struct AppState {
    cache: Mutex<LruCache<(i64, i64), PolytopeCell>>,
    config: ServiceConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub code: String,
    pub message: String,
    pub detail: Value,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>, detail: Value) -> Self {
        ApiError {
            status: status.as_u16(),
            code: code.to_string(),
            message: message.into(),
            detail,
        }
    }

    fn invalid_pair(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_pair", message, Value::Null)
    }

    fn bad_request(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "bad_request", message, Value::Null)
    }
}

impl From<IndexError> for ApiError {
    fn from(e: IndexError) -> Self {
        let detail = match &e {
            IndexError::Syntax(s) => json!({
                "position": s.position,
                "found": s.found,
                "expected": s.expected,
            }),
            _ => Value::Null,
        };
        ApiError::new(StatusCode::BAD_REQUEST, "bad_formula", e.to_string(), detail)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

fn int_param(q: &HashMap<String, String>, key: &str) -> Result<i64, ApiError> {
    let raw = q
        .get(key)
        .ok_or_else(|| ApiError::invalid_pair(format!("missing query parameter '{key}'")))?;
    raw.trim()
        .parse()
        .map_err(|_| ApiError::invalid_pair(format!("query parameter '{key}' is not an integer: {raw:?}")))
}

fn pair_param(q: &HashMap<String, String>) -> Result<ValidPair, ApiError> {
    let (n, m) = (int_param(q, "n")?, int_param(q, "m")?);
    ValidPair::new(n, m).map_err(|e| ApiError::invalid_pair(e.to_string()))
}

async fn cached_polytope(state: &AppState, pair: ValidPair) -> Result<Arc<PolytopeView>, ApiError> {
    let cell = {
        let mut cache = state.cache.lock().expect("cache lock");
        cache
            .get_or_insert((pair.n(), pair.m()), || Arc::new(OnceCell::new()))
            .clone()
    };
    let view = cell
        .get_or_try_init(
            || async move { tokio::task::spawn_blocking(move || Arc::new(PolytopeView::for_pair(pair))).await },
        )
        .await
        .map_err(|e| {
            ApiError::new(
                StatusCode::INTERNAL_SERVER_ERROR,
                "internal",
                e.to_string(),
                Value::Null,
            )
        })?;
    Ok(view.clone())
}

async fn polytope(
    State(state): State<Arc<AppState>>,
    Query(q): Query<HashMap<String, String>>,
) -> Result<Json<Arc<PolytopeView>>, ApiError> {
    let pair = pair_param(&q)?;
    Ok(Json(cached_polytope(&state, pair).await?))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptimizeBody {
    n: i64,
    m: i64,
    index: IndexRequest,
    sense: Sense,
    #[serde(default)]
    tolerance: Option<f64>,
}

async fn optimize_handler(State(state): State<Arc<AppState>>, body: Bytes) -> Result<Json<OptimizationView>, ApiError> {
    let body: OptimizeBody =
        serde_json::from_slice(&body).map_err(|e| ApiError::bad_request(format!("invalid request body: {e}")))?;
    let pair = ValidPair::new(body.n, body.m).map_err(|e| ApiError::invalid_pair(e.to_string()))?;
    let spec = body.index.resolve()?;
    let tolerance = body.tolerance.unwrap_or(state.config.tolerance);
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(ApiError::bad_request("tolerance must be finite and non-negative"));
    }
    let result = optimize_with_tolerance(&spec, pair, body.sense, tolerance);
    Ok(Json(OptimizationView::new(&spec, &result)))
}

async fn graph(
    State(state): State<Arc<AppState>>,
    Query(q): Query<HashMap<String, String>>,
) -> Result<Response, ApiError> {
    let pair = pair_param(&q)?;
    let p = Point3::new(int_param(&q, "m12")?, int_param(&q, "m13")?, int_param(&q, "m33")?);
    let dot = match q.get("format").map(String::as_str) {
        None | Some("json") => false,
        Some("dot") => true,
        Some(other) => return Err(ApiError::bad_request(format!("unknown format {other:?}"))),
    };
    let budget = state.config.realize_budget;
    let outcome = tokio::task::spawn_blocking(move || realize(pair, p, budget))
        .await
        .map_err(|e| {
            ApiError::new(
                StatusCode::INTERNAL_SERVER_ERROR,
                "internal",
                e.to_string(),
                Value::Null,
            )
        })?;
    let g = outcome.map_err(|e| match e {
        RealizeError::InconsistentPoint(inner) => ApiError::invalid_pair(inner.to_string()),
        RealizeError::Unrealized { reason, .. } => ApiError::new(
            StatusCode::NOT_FOUND,
            "unrealizable",
            e.to_string(),
            json!({ "reason": reason.reason() }),
        ),
    })?;
    Ok(if dot {
        ([(header::CONTENT_TYPE, "text/vnd.graphviz; charset=utf-8")], g.to_dot()).into_response()
    } else {
        Json(GraphView::new(&g)).into_response()
    })
}

async fn presets() -> Json<Value> {
    Json(json!(preset_descriptors()))
}

async fn health() -> &'static str {
    "ok"
}

async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint", Value::Null)
}

pub fn router(config: ServiceConfig) -> Router {
    let capacity = NonZeroUsize::new(config.cache_capacity.max(1)).expect("positive");
    let cors = if config.cors_origins.is_empty() {
        CorsLayer::permissive()
    } else {
        let origins: Vec<_> = config
            .cors_origins
            .iter()
            .filter_map(|o| o.parse::<header::HeaderValue>().ok())
            .collect();
        CorsLayer::new()
            .allow_origin(origins)
            .allow_methods(tower_http::cors::Any)
            .allow_headers(tower_http::cors::Any)
    };
    let state = Arc::new(AppState {
        cache: Mutex::new(LruCache::new(capacity)),
        config,
    });
    Router::new()
        .route("/api/polytope", get(polytope))
        .route("/api/optimize", post(optimize_handler))
        .route("/api/graph", get(graph))
        .route("/api/presets", get(presets))
        .route("/api/health", get(health))
        .fallback(not_found)
        .layer(cors)
        .with_state(state)
}

/// Serves until Ctrl-C.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
