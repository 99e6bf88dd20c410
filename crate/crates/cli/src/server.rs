//! Read-only HTTP puzzle store.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path as UrlPath, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use planarity_core::puzzle::{encode_puzzle, verify_positions, VertexPosition};
use planarity_core::{Puzzle, PuzzleError};
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

use crate::Failure;

/// Puzzles keyed by id, fixed at startup.
#[derive(Debug, Default)]
pub struct Store {
    puzzles: BTreeMap<String, Puzzle>,
}

impl Store {
    pub fn insert(&mut self, mut puzzle: Puzzle, id: impl Into<String>) {
        puzzle.id = id.into();
        self.puzzles.insert(puzzle.id.clone(), puzzle);
    }

    pub fn get(&self, id: &str) -> Option<&Puzzle> {
        self.puzzles.get(id)
    }

    pub fn len(&self) -> usize {
        self.puzzles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.puzzles.is_empty()
    }
}

/// Loads every `*.json` file in `dir`; the file stem becomes the puzzle id.
pub fn load_store(dir: &Path) -> Result<Store, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::invalid(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut store = Store::default();
    for path in paths {
        let puzzle = crate::read_puzzle(&path)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        store.insert(puzzle, stem);
    }
    Ok(store)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Summary {
    pub id: String,
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub crossings: u64,
    pub shift_lower: usize,
    pub shift_upper: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyRequest {
    pub positions: Vec<VertexPosition>,
}

fn error(status: StatusCode, message: impl ToString) -> Response {
    (status, Json(serde_json::json!({ "error": message.to_string() }))).into_response()
}

async fn list(State(store): State<Arc<Store>>) -> Json<Vec<Summary>> {
    Json(
        store
            .puzzles
            .values()
            .map(|p| Summary {
                id: p.id.clone(),
                name: p.name.clone(),
                n: p.graph().vertex_count(),
                m: p.graph().edge_count(),
                crossings: p.meta.crossings,
                shift_lower: p.meta.shift_lower,
                shift_upper: p.meta.shift_upper,
            })
            .collect(),
    )
}

async fn document(State(store): State<Arc<Store>>, UrlPath(id): UrlPath<String>) -> Response {
    match store.get(&id) {
        Some(p) => ([(header::CONTENT_TYPE, "application/json")], encode_puzzle(p)).into_response(),
        None => error(StatusCode::NOT_FOUND, format!("unknown puzzle {id:?}")),
    }
}

async fn verify(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<VerifyRequest>, JsonRejection>,
) -> Response {
    let Some(p) = store.get(&id) else {
        return error(StatusCode::NOT_FOUND, format!("unknown puzzle {id:?}"));
    };
    let Json(request) = match body {
        Ok(body) => body,
        Err(rejection) => return error(StatusCode::BAD_REQUEST, rejection.body_text()),
    };
    match verify_positions(p, &request.positions) {
        Ok(verdict) => Json(verdict).into_response(),
        Err(e @ (PuzzleError::InvalidDrawing(_) | PuzzleError::Malformed { .. })) => {
            error(StatusCode::UNPROCESSABLE_ENTITY, e)
        }
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e),
    }
}

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/api/puzzles", get(list))
        .route("/api/puzzles/{id}", get(document))
        .route("/api/puzzles/{id}/verify", post(verify))
        .layer(CorsLayer::permissive())
        .with_state(store)
}

pub async fn serve(store: Store, host: &str, port: u16) -> Result<(), Failure> {
    let listener = tokio::net::TcpListener::bind((host, port))
        .await
        .map_err(|e| Failure::invalid(format!("cannot bind {host}:{port}: {e}")))?;
    eprintln!("serving {} puzzle(s) on http://{}", store.len(), listener.local_addr().map_err(Failure::invalid)?);
    axum::serve(listener, router(Arc::new(store))).await.map_err(Failure::invalid)
}
