//! Read-only HTTP API over one catalog file, and the static exporter that
//! writes the same payloads to disk.

use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::body::Body;
use axum::extract::{Path as UrlPath, RawQuery, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use museumviz_core::catalog::value_counts;
use museumviz_core::{Catalog, Dimension};
use serde::Serialize;
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::services::ServeDir;

use crate::store::{load_catalog, StoreError};
use crate::viz::{render, VizError, VizKind, VizRequest};

/// File names written by [`export_bundle`], in the order they are written.
pub const BUNDLE_FILES: [&str; 5] = [
    "catalog.json",
    "network.json",
    "treemap.json",
    "sunburst.json",
    "polygon.json",
];

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error(transparent)]
    Load(#[from] StoreError),
    #[error("cannot bind {addr}: {source}")]
    Bind {
        addr: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid CORS origin `{0}`")]
    BadOrigin(String),
}

#[derive(Debug, Clone, Default)]
pub struct ServeOptions {
    /// Directory served at `/` for everything outside `/api`.
    pub static_dir: Option<PathBuf>,
    /// Allowed CORS origins. Empty means any origin.
    pub cors_origins: Vec<String>,
}

#[derive(Serialize)]
struct Meta<'a> {
    portal_name: &'a str,
    built_at: &'a str,
    records: usize,
    dimensions: BTreeMap<Dimension, BTreeMap<String, usize>>,
}

struct AppState {
    catalog: Catalog,
    catalog_json: Vec<u8>,
    meta_json: Vec<u8>,
}

/// Full catalog document as served at `/api/catalog`.
pub fn catalog_payload(cat: &Catalog) -> Vec<u8> {
    serde_json::to_vec(cat).expect("catalog always serializes")
}

/// Portal name, record count and per-dimension value counts.
pub fn meta_payload(cat: &Catalog) -> Vec<u8> {
    let meta = Meta {
        portal_name: &cat.portal_name,
        built_at: &cat.built_at,
        records: cat.len(),
        dimensions: Dimension::ALL
            .into_iter()
            .map(|d| (d, value_counts(&cat.records, d)))
            .collect(),
    };
    serde_json::to_vec(&meta).expect("meta always serializes")
}

fn json(status: StatusCode, body: Vec<u8>) -> Response {
    (
        status,
        [(header::CONTENT_TYPE, "application/json")],
        Body::from(body),
    )
        .into_response()
}

fn error(status: StatusCode, e: &VizError) -> Response {
    json(
        status,
        serde_json::to_vec(e).expect("error always serializes"),
    )
}

fn not_found(detail: String) -> Response {
    error(
        StatusCode::NOT_FOUND,
        &VizError {
            error: "not_found",
            detail,
        },
    )
}

#[derive(Serialize)]
struct Health {
    status: &'static str,
    records: usize,
}

async fn health(State(st): State<Arc<AppState>>) -> Response {
    let body = Health {
        status: "ok",
        records: st.catalog.len(),
    };
    json(
        StatusCode::OK,
        serde_json::to_vec(&body).expect("health always serializes"),
    )
}

async fn meta(State(st): State<Arc<AppState>>) -> Response {
    json(StatusCode::OK, st.meta_json.clone())
}

async fn full_catalog(State(st): State<Arc<AppState>>) -> Response {
    json(StatusCode::OK, st.catalog_json.clone())
}

async fn artifact(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Response {
    match st.catalog.get(&id) {
        Some(rec) => json(
            StatusCode::OK,
            serde_json::to_vec(rec).expect("record always serializes"),
        ),
        None => not_found(format!("no artifact with id `{id}`")),
    }
}

async fn viz(
    State(st): State<Arc<AppState>>,
    UrlPath(kind): UrlPath<String>,
    RawQuery(query): RawQuery,
) -> Response {
    let Some(kind) = VizKind::parse(&kind) else {
        return not_found(format!("unknown visualization `{kind}`"));
    };
    let pairs: Vec<(String, String)> =
        url::form_urlencoded::parse(query.unwrap_or_default().as_bytes())
            .into_owned()
            .collect();
    let req = match VizRequest::from_query(kind, &pairs) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, &e),
    };
    // Layouts are CPU-bound; keep them off the async workers.
    let result = tokio::task::spawn_blocking(move || render(&st.catalog, &req)).await;
    match result {
        Ok(Ok(body)) => json(StatusCode::OK, body),
        Ok(Err(e)) => error(StatusCode::BAD_REQUEST, &e),
        Err(e) => error(
            StatusCode::INTERNAL_SERVER_ERROR,
            &VizError {
                error: "internal",
                detail: e.to_string(),
            },
        ),
    }
}

async fn api_fallback() -> Response {
    not_found("no such endpoint".into())
}

fn cors(origins: &[String]) -> Result<CorsLayer, ServiceError> {
    let layer = CorsLayer::new().allow_methods([Method::GET, Method::HEAD]);
    if origins.is_empty() {
        return Ok(layer.allow_origin(AllowOrigin::any()));
    }
    let values = origins
        .iter()
        .map(|o| HeaderValue::from_str(o).map_err(|_| ServiceError::BadOrigin(o.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(layer.allow_origin(values))
}

/// The service's routes over an already-loaded catalog.
pub fn router(catalog: Catalog, opts: &ServeOptions) -> Result<Router, ServiceError> {
    let state = Arc::new(AppState {
        catalog_json: catalog_payload(&catalog),
        meta_json: meta_payload(&catalog),
        catalog,
    });
    let api = Router::new()
        .route("/health", get(health))
        .route("/catalog", get(full_catalog))
        .route("/catalog/meta", get(meta))
        .route("/artifacts/{*id}", get(artifact))
        .route("/viz/{kind}", get(viz))
        .fallback(api_fallback)
        .with_state(state);
    let mut app = Router::new().nest("/api", api);
    if let Some(dir) = &opts.static_dir {
        app = app.fallback_service(ServeDir::new(dir));
    }
    Ok(app.layer(cors(&opts.cors_origins)?))
}

/// Binds `addr` and serves until the future is dropped or Ctrl-C arrives.
/// `on_bound` receives the actual address (useful with port 0).
pub async fn serve(
    catalog_path: &Path,
    addr: &str,
    opts: &ServeOptions,
    on_bound: impl FnOnce(SocketAddr),
) -> Result<(), ServiceError> {
    let catalog = load_catalog(catalog_path)?;
    tracing::info!(records = catalog.len(), path = %catalog_path.display(), "catalog loaded");
    let app = router(catalog, opts)?;
    let bind_err = |source| ServiceError::Bind {
        addr: addr.into(),
        source,
    };
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(bind_err)?;
    on_bound(listener.local_addr().map_err(bind_err)?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .map_err(|source| ServiceError::Io {
            path: PathBuf::from(addr),
            source,
        })
}

/// The five bundle payloads with default parameters, byte-identical to
/// `/api/catalog` and `/api/viz/{kind}` responses.
pub fn bundle(cat: &Catalog) -> Vec<(&'static str, Vec<u8>)> {
    let mut files = vec![(BUNDLE_FILES[0], catalog_payload(cat))];
    for (name, kind) in BUNDLE_FILES[1..].iter().zip(VizKind::ALL) {
        let body = render(cat, &VizRequest::new(kind)).expect("default requests are valid");
        files.push((name, body));
    }
    files
}

pub fn export_bundle(catalog_path: &Path, out_dir: &Path) -> Result<Vec<PathBuf>, ServiceError> {
    let cat = load_catalog(catalog_path)?;
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| ServiceError::Io { path, source }
    };
    std::fs::create_dir_all(out_dir).map_err(io(out_dir))?;
    let mut written = Vec::new();
    for (name, body) in bundle(&cat) {
        let path = out_dir.join(name);
        std::fs::write(&path, body).map_err(io(&path))?;
        written.push(path);
    }
    Ok(written)
}
