//! JSON API over a single shared [`Session`].

use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;

use crate::io::parse_seed;
use crate::session::{Session, SessionError};

pub struct AppState {
    session: Mutex<Session>,
    state_file: Option<PathBuf>,
}

impl AppState {
    pub fn new(session: Session, state_file: Option<PathBuf>) -> Arc<Self> {
        Arc::new(AppState { session: Mutex::new(session), state_file })
    }
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match e {
            SessionError::Conflict { .. } => StatusCode::CONFLICT,
            SessionError::Tropical(_) => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError(status, e.to_string())
    }
}

type ApiResult = Result<Json<serde_json::Value>, ApiError>;

#[derive(Deserialize)]
struct MutateBody {
    vertex: usize,
    #[serde(default)]
    version: Option<u64>,
}

#[derive(Deserialize, Default)]
struct VersionBody {
    #[serde(default)]
    version: Option<u64>,
}

#[derive(Deserialize)]
struct DepthQuery {
    #[serde(default = "one")]
    depth: usize,
}

fn one() -> usize {
    1
}

fn bad_json(e: serde_json::Error) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, format!("invalid JSON body: {e}"))
}

/// Runs `f` under the session lock, persists if requested, and returns the new view.
fn transition(state: &AppState, f: impl FnOnce(&mut Session) -> Result<(), SessionError>) -> ApiResult {
    let mut session = state.session.lock().expect("session lock");
    f(&mut session)?;
    if let Some(path) = &state.state_file {
        let text = serde_json::to_string_pretty(&session.snapshot()).expect("snapshot serializes");
        std::fs::write(path, text).map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    }
    Ok(Json(serde_json::to_value(session.view()?).expect("view serializes")))
}

async fn get_session(State(state): State<Arc<AppState>>) -> ApiResult {
    let session = state.session.lock().expect("session lock").clone();
    Ok(Json(serde_json::to_value(session.view()?).expect("view serializes")))
}

async fn post_mutate(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult {
    let body: MutateBody = serde_json::from_slice(&body).map_err(bad_json)?;
    transition(&state, |s| s.mutate(body.vertex, body.version))
}

async fn post_undo(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult {
    let body: VersionBody = if body.is_empty() { VersionBody::default() } else { serde_json::from_slice(&body).map_err(bad_json)? };
    transition(&state, |s| s.undo(body.version))
}

/// An empty body resets to the current initial seed.
async fn post_reset(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult {
    let seed = if body.iter().all(u8::is_ascii_whitespace) {
        None
    } else {
        let text = std::str::from_utf8(&body).map_err(|e| ApiError(StatusCode::BAD_REQUEST, e.to_string()))?;
        Some(parse_seed(text).map_err(|e| ApiError(StatusCode::BAD_REQUEST, e.to_string()))?)
    };
    transition(&state, |s| {
        let seed = seed.unwrap_or_else(|| s.initial().clone());
        s.reset(seed);
        Ok(())
    })
}

async fn get_neighborhood(State(state): State<Arc<AppState>>, Query(q): Query<DepthQuery>) -> ApiResult {
    let session = state.session.lock().expect("session lock").clone();
    Ok(Json(serde_json::to_value(session.neighborhood(q.depth)?).expect("neighborhood serializes")))
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/session", get(get_session))
        .route("/mutate", post(post_mutate))
        .route("/undo", post(post_undo))
        .route("/reset", post(post_reset))
        .route("/neighborhood", get(get_neighborhood))
        .with_state(state)
}

/// Serves until the process is stopped.
pub async fn serve(addr: std::net::SocketAddr, state: Arc<AppState>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
