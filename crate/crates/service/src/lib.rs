//! HTTP service for hot-seat quantum tapsilou games.
//!
//! Routes (JSON bodies, UTF-8):
//!
//! | method | path                                | purpose                          |
//! |--------|-------------------------------------|----------------------------------|
//! | GET    | `/api/health`                       | liveness                         |
//! | POST   | `/api/sessions`                     | create a session (201)           |
//! | GET    | `/api/sessions/{id}`                | session view                     |
//! | POST   | `/api/sessions/{id}/tosser-move`    | `{k, bet?}`                      |
//! | POST   | `/api/sessions/{id}/gambler-move`   | `{l}`; view includes the profile |
//! | POST   | `/api/sessions/{id}/measure`        | measure and settle               |
//! | GET    | `/api/analysis/phase1?n=`           | phase-1 sweep                    |
//! | GET    | `/api/analysis/phase2?n=&k=`        | phase-2 sweep                    |
//! | GET    | `/api/verify/duality?n=`            | duality check (422 for odd `n`)  |
//!
//! Anything else falls through to the static web client directory, if one is
//! configured.

mod api;
mod error;
mod store;

use std::future::Future;
use std::io;
use std::path::PathBuf;
use std::sync::Arc;

use axum::Router;
use tokio::net::TcpListener;
use tower_http::services::ServeDir;
use tower_http::trace::{DefaultMakeSpan, DefaultOnResponse, TraceLayer};
use tracing::Level;

pub use api::{AppState, CreateSession, GamblerMove, MeasureView, SessionView, TosserMove};
pub use error::ApiError;
pub use store::{load_snapshot, SessionStore};

/// Environment variable naming the snapshot file.
pub const SNAPSHOT_ENV: &str = "QTG_SNAPSHOT_PATH";

/// Environment variable naming the built web client directory.
pub const STATIC_DIR_ENV: &str = "QTG_STATIC_DIR";

#[derive(Debug, Clone, Default)]
pub struct ServiceConfig {
    pub snapshot_path: Option<PathBuf>,
    pub static_dir: Option<PathBuf>,
}

impl ServiceConfig {
    pub fn from_env() -> Self {
        let path = |var| std::env::var_os(var).filter(|v| !v.is_empty()).map(PathBuf::from);
        Self {
            snapshot_path: path(SNAPSHOT_ENV),
            static_dir: path(STATIC_DIR_ENV),
        }
    }

    pub fn build_store(&self) -> io::Result<SessionStore> {
        match &self.snapshot_path {
            Some(p) => SessionStore::with_snapshot(p),
            None => Ok(SessionStore::in_memory()),
        }
    }
}

pub fn router(store: Arc<SessionStore>, static_dir: Option<PathBuf>) -> Router {
    let app = api::routes();
    let app = match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app,
    };
    let trace = TraceLayer::new_for_http()
        .make_span_with(DefaultMakeSpan::new().level(Level::INFO))
        .on_response(DefaultOnResponse::new().level(Level::INFO));
    app.with_state(store).layer(trace)
}

/// Serve `app` on an already-bound listener until `shutdown` resolves.
pub async fn serve(
    listener: TcpListener,
    app: Router,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> io::Result<()> {
    axum::serve(listener, app).with_graceful_shutdown(shutdown).await
}
