use std::sync::Arc;

use tapsilou_service::{router, ServiceConfig};
use tokio::net::TcpListener;
use tracing_subscriber::EnvFilter;

use crate::CliError;

pub fn serve(host: &str, port: u16) -> Result<(), CliError> {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")))
        .with_writer(std::io::stderr)
        .init();
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()?;
    runtime.block_on(run(host, port))
}

async fn run(host: &str, port: u16) -> Result<(), CliError> {
    let config = ServiceConfig::from_env();
    let store = config
        .build_store()
        .map_err(|e| CliError::Runtime(format!("cannot load snapshot: {e}")))?;
    let listener = TcpListener::bind((host, port))
        .await
        .map_err(|e| CliError::Runtime(format!("cannot bind {host}:{port}: {e}")))?;
    let addr = listener.local_addr()?;
    eprintln!("listening on http://{addr}");
    if let Some(path) = &config.snapshot_path {
        tracing::info!("persisting sessions to {}", path.display());
    }
    let app = router(Arc::new(store), config.static_dir);
    tapsilou_service::serve(listener, app, shutdown_signal()).await?;
    tracing::info!("shut down");
    Ok(())
}

async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let terminate = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let terminate = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {}
        _ = terminate => {}
    }
}
