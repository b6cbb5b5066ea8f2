//! JSON-over-HTTP access to approximation and recognition for a local drawing UI.
//!
//! All bases at the default `μ` and every model are built at startup and shared
//! read-only between requests.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::net::SocketAddr;
use std::path::Path;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, CorsLayer};

use inkbasis::approx::{approx_error_with_mu, project, reconstruct, symbol_curve, ApproxError};
use inkbasis::bases::{build_basis, condition_number, BasisKind};
use inkbasis::classify::{extract_features, load_model, predict, FeatureOptions, OvoModel};
use inkbasis::data_io::symbol_from_json;
use inkbasis::{Error as CoreError, InkSymbol, OrthoBasis, DEFAULT_MU, MAX_DEGREE};

pub const DEFAULT_PORT: u16 = 7878;
pub const RECONSTRUCTION_POINTS: usize = 200;
pub const CONDITION_GRID: usize = 201;

struct LoadedModel {
    model: OvoModel,
    basis: OrthoBasis,
}

/// Immutable state shared by all handlers.
pub struct AppState {
    bases: HashMap<(BasisKind, usize), OrthoBasis>,
    models: BTreeMap<String, LoadedModel>,
}

impl AppState {
    /// Builds every basis kind at degrees `0..=MAX_DEGREE` with the default `μ`.
    pub fn new(models: Vec<(String, OvoModel)>) -> inkbasis::Result<Self> {
        let mut bases = HashMap::new();
        for kind in BasisKind::ALL {
            for d in 0..=MAX_DEGREE {
                bases.insert((kind, d), build_basis(kind, d, DEFAULT_MU)?);
            }
        }
        let mut loaded = BTreeMap::new();
        for (id, model) in models {
            let f = model.meta.features;
            let basis = build_basis(f.kind, f.degree, f.mu)?;
            if loaded
                .insert(id.clone(), LoadedModel { model, basis })
                .is_some()
            {
                return Err(CoreError::InvalidArgument(format!(
                    "duplicate model id '{id}'"
                )));
            }
        }
        Ok(AppState {
            bases,
            models: loaded,
        })
    }

    /// Loads model files; each id is the file stem.
    pub fn with_model_files<P: AsRef<Path>>(paths: &[P]) -> inkbasis::Result<Self> {
        let mut models = Vec::new();
        for p in paths {
            let p = p.as_ref();
            let id = p
                .file_stem()
                .and_then(|s| s.to_str())
                .ok_or_else(|| {
                    CoreError::InvalidArgument(format!("bad model path {}", p.display()))
                })?
                .to_string();
            models.push((id, load_model(p)?));
        }
        AppState::new(models)
    }

    pub fn model_ids(&self) -> impl Iterator<Item = &str> {
        self.models.keys().map(String::as_str)
    }

    fn basis(
        &self,
        kind: BasisKind,
        degree: usize,
        mu: f64,
    ) -> inkbasis::Result<Cow<'_, OrthoBasis>> {
        match self.bases.get(&(kind, degree)) {
            Some(b) if mu == DEFAULT_MU => Ok(Cow::Borrowed(b)),
            _ => build_basis(kind, degree, mu).map(Cow::Owned),
        }
    }
}

/// Machine-readable failure: `{"error": kind, "reason": text, "path"?: location}`.
#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    status: StatusCode,
    error: &'static str,
    reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
}

impl ApiError {
    fn new(status: StatusCode, error: &'static str, reason: impl Into<String>) -> Self {
        ApiError {
            status,
            error,
            reason: reason.into(),
            path: None,
        }
    }

    fn schema(path: &str, reason: impl Into<String>) -> Self {
        ApiError {
            path: Some(path.into()),
            ..ApiError::new(StatusCode::BAD_REQUEST, "schema", reason)
        }
    }
}

impl From<CoreError> for ApiError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Schema { path, reason } => ApiError::schema(&path, reason),
            CoreError::DegenerateInk(r) => {
                ApiError::new(StatusCode::BAD_REQUEST, "degenerate_ink", r)
            }
            other => ApiError::new(
                StatusCode::INTERNAL_SERVER_ERROR,
                "internal",
                other.to_string(),
            ),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

fn body_object(body: &Bytes) -> Result<serde_json::Map<String, Value>, ApiError> {
    match serde_json::from_slice::<Value>(body) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(ApiError::schema("$", "body must be a JSON object")),
        Err(e) => Err(ApiError::schema("$", format!("invalid JSON: {e}"))),
    }
}

fn symbol_field(body: &serde_json::Map<String, Value>) -> Result<InkSymbol, ApiError> {
    let v = body
        .get("symbol")
        .ok_or_else(|| ApiError::schema("$.symbol", "missing field"))?;
    Ok(symbol_from_json(v, "$.symbol")?)
}

#[derive(Debug, Serialize)]
pub struct Coefficients {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct ApproximateResponse {
    pub basis: BasisKind,
    pub degree: usize,
    pub mu: f64,
    pub coefficients: Coefficients,
    pub reconstruction: Vec<[f64; 2]>,
    pub error: ApproxError<f64>,
    /// `None` when the curve passes through the origin at a grid point.
    pub condition_max: Option<f64>,
}

/// Largest relative condition number of the vector curve `(x(s), y(s))` on a uniform grid:
/// `‖(cond_abs x, cond_abs y)‖ / ‖(x, y)‖`.
fn curve_condition_max(
    x: &inkbasis::bases::PolyInBasis<'_, f64>,
    y: &inkbasis::bases::PolyInBasis<'_, f64>,
) -> inkbasis::Result<Option<f64>> {
    let mut worst = 0.0f64;
    for k in 0..CONDITION_GRID {
        let s = -1.0 + 2.0 * k as f64 / (CONDITION_GRID - 1) as f64;
        let cx = condition_number(x, s.min(1.0))?;
        let cy = condition_number(y, s.min(1.0))?;
        let value = cx.value.hypot(cy.value);
        if value < 1e-300 {
            return Ok(None);
        }
        worst = worst.max(cx.absolute.hypot(cy.absolute) / value);
    }
    Ok(Some(worst))
}

async fn approximate(
    State(st): State<Arc<AppState>>,
    body: Bytes,
) -> ApiResult<ApproximateResponse> {
    let body = body_object(&body)?;
    let symbol = symbol_field(&body)?;
    let kind = match body.get("basis") {
        Some(Value::String(s)) => s.parse::<BasisKind>().map_err(|_| {
            ApiError::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                "unsupported_basis",
                format!("unknown basis '{s}'"),
            )
        })?,
        Some(_) => return Err(ApiError::schema("$.basis", "basis must be a string")),
        None => return Err(ApiError::schema("$.basis", "missing field")),
    };
    let degree = match body.get("degree") {
        Some(v) => v
            .as_u64()
            .ok_or_else(|| ApiError::schema("$.degree", "degree must be a nonnegative integer"))?,
        None => return Err(ApiError::schema("$.degree", "missing field")),
    };
    if degree > MAX_DEGREE as u64 {
        return Err(ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "unsupported_degree",
            format!("degree {degree} exceeds {MAX_DEGREE}"),
        ));
    }
    let mu = match body.get("mu") {
        None | Some(Value::Null) => DEFAULT_MU,
        Some(v) => v
            .as_f64()
            .filter(|m| m.is_finite() && *m >= 0.0)
            .ok_or_else(|| ApiError::schema("$.mu", "mu must be a finite nonnegative number"))?,
    };

    let basis = st.basis(kind, degree as usize, mu)?;
    let curve = symbol_curve(&symbol)?;
    let cv = project(&curve, &basis)?;
    let error = approx_error_with_mu(&curve, &cv, &basis, mu)?;
    let rec = reconstruct(&cv, &basis, RECONSTRUCTION_POINTS)?;
    let condition_max = curve_condition_max(&cv.x_poly(&basis)?, &cv.y_poly(&basis)?)?;
    Ok(Json(ApproximateResponse {
        basis: kind,
        degree: degree as usize,
        mu,
        reconstruction: rec.points().map(|(x, y)| [x, y]).collect(),
        coefficients: Coefficients {
            xs: cv.xs,
            ys: cv.ys,
        },
        error,
        condition_max,
    }))
}

#[derive(Debug, Serialize)]
pub struct RecognizeResponse {
    pub model_id: String,
    pub label: String,
    pub votes: BTreeMap<String, usize>,
    pub margins: BTreeMap<String, f64>,
}

async fn recognize(State(st): State<Arc<AppState>>, body: Bytes) -> ApiResult<RecognizeResponse> {
    let body = body_object(&body)?;
    let id = match body.get("model_id") {
        Some(Value::String(s)) => s.clone(),
        _ => return Err(ApiError::schema("$.model_id", "model_id must be a string")),
    };
    let symbol = symbol_field(&body)?;
    let loaded = st.models.get(&id).ok_or_else(|| {
        ApiError::new(
            StatusCode::NOT_FOUND,
            "unknown_model",
            format!("no model '{id}'"),
        )
    })?;
    let meta = loaded.model.meta.features;
    let opts = FeatureOptions {
        points: meta.points,
        keep_constant: meta.keep_constant,
    };
    let feature = extract_features(&symbol, &loaded.basis, opts)?;
    let p = predict(&loaded.model, &feature)?;
    Ok(Json(RecognizeResponse {
        model_id: id,
        label: p.label.to_string(),
        votes: p.votes.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        margins: p.margins.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }))
}

async fn bases(State(st): State<Arc<AppState>>) -> Json<Value> {
    let bases: Vec<Value> = BasisKind::ALL
        .iter()
        .map(|k| {
            json!({
                "name": k.name(),
                "weight": if k.weight() == inkbasis::bases::Weight::Unit { "unit" } else { "chebyshev" },
                "sobolev": k.is_sobolev(),
            })
        })
        .collect();
    let models: Vec<Value> = st
        .models
        .iter()
        .map(|(id, m)| {
            let f = m.model.meta.features;
            json!({
                "id": id,
                "basis": f.kind.name(),
                "degree": f.degree,
                "mu": f.mu,
                "classes": m.model.meta.classes.iter().map(u8::to_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    Json(json!({
        "bases": bases,
        "degree_range": [0, MAX_DEGREE],
        "default_mu": DEFAULT_MU,
        "models": models,
    }))
}

/// True for `http(s)://localhost`, `127.0.0.1` or `[::1]` on any port.
pub fn is_local_origin(origin: &str) -> bool {
    let Some(rest) = origin
        .strip_prefix("http://")
        .or_else(|| origin.strip_prefix("https://"))
    else {
        return false;
    };
    let host = if rest.starts_with('[') {
        rest.split_inclusive(']').next().unwrap_or("")
    } else {
        rest.split(':').next().unwrap_or("")
    };
    let port_ok = match &rest[host.len()..] {
        "" => true,
        p => p
            .strip_prefix(':')
            .is_some_and(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit())),
    };
    port_ok && matches!(host, "localhost" | "127.0.0.1" | "[::1]")
}

pub fn router(state: Arc<AppState>) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(AllowOrigin::predicate(|o: &HeaderValue, _| {
            o.to_str().is_ok_and(is_local_origin)
        }))
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    Router::new()
        .route("/api/approximate", post(approximate))
        .route("/api/recognize", post(recognize))
        .route("/api/bases", get(bases))
        .layer(cors)
        .with_state(state)
}

/// Serves on `addr` until the process ends.
pub async fn serve(addr: SocketAddr, state: Arc<AppState>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state)).await
}
