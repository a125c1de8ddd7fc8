//! In-memory session store with optional JSON snapshot persistence.
//!
//! Each session sits behind its own mutex, so requests against different
//! sessions run in parallel while mutations of one session are serialized.
//! Mutations run against a copy that is committed only on success, which
//! keeps every request atomic.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};
use tapsilou_core::GameSession;

use crate::error::ApiError;

const SNAPSHOT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Snapshot {
    version: u32,
    sessions: Vec<GameSession>,
}

#[derive(Debug, Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<GameSession>>>>,
    snapshot_path: Option<PathBuf>,
    persist_lock: Mutex<()>,
}

impl SessionStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Store backed by a snapshot file; existing contents are loaded.
    pub fn with_snapshot(path: impl Into<PathBuf>) -> io::Result<Self> {
        let path = path.into();
        let store = Self {
            snapshot_path: Some(path.clone()),
            ..Self::default()
        };
        if path.exists() {
            let sessions = load_snapshot(&path)?;
            let mut map = store.sessions.write().expect("store lock poisoned");
            for s in sessions {
                map.insert(s.id().to_string(), Arc::new(Mutex::new(s)));
            }
        }
        Ok(store)
    }

    pub fn snapshot_path(&self) -> Option<&Path> {
        self.snapshot_path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("store lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert(&self, session: GameSession) -> Result<GameSession, ApiError> {
        {
            let mut map = self.sessions.write().expect("store lock poisoned");
            if map.contains_key(session.id()) {
                return Err(ApiError::invalid(format!("duplicate session id {}", session.id())));
            }
            map.insert(session.id().to_string(), Arc::new(Mutex::new(session.clone())));
        }
        self.persist();
        Ok(session)
    }

    pub fn get(&self, id: &str) -> Result<GameSession, ApiError> {
        let entry = self.entry(id)?;
        let session = entry.lock().expect("session lock poisoned").clone();
        Ok(session)
    }

    /// Run `f` on a copy of the session and commit the copy only if `f`
    /// succeeds. Returns `f`'s value together with the committed state.
    pub fn update<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut GameSession) -> Result<T, ApiError>,
    ) -> Result<(T, GameSession), ApiError> {
        let entry = self.entry(id)?;
        let result = {
            let mut guard = entry.lock().expect("session lock poisoned");
            let mut draft = guard.clone();
            let value = f(&mut draft)?;
            *guard = draft.clone();
            (value, draft)
        };
        self.persist();
        Ok(result)
    }

    /// All sessions ordered by id.
    pub fn sessions(&self) -> Vec<GameSession> {
        let entries: Vec<_> = self
            .sessions
            .read()
            .expect("store lock poisoned")
            .values()
            .cloned()
            .collect();
        let mut out: Vec<GameSession> = entries
            .iter()
            .map(|e| e.lock().expect("session lock poisoned").clone())
            .collect();
        out.sort_by(|a, b| a.id().cmp(b.id()));
        out
    }

    pub fn snapshot_bytes(&self) -> Vec<u8> {
        let snap = Snapshot {
            version: SNAPSHOT_VERSION,
            sessions: self.sessions(),
        };
        let mut bytes = serde_json::to_vec_pretty(&snap).expect("sessions serialize");
        bytes.push(b'\n');
        bytes
    }

    /// Write the snapshot to `path` via a temporary file and rename.
    pub fn save_snapshot(&self, path: &Path) -> io::Result<()> {
        let _guard = self.persist_lock.lock().expect("persist lock poisoned");
        let bytes = self.snapshot_bytes();
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        fs::write(&tmp, bytes)?;
        fs::rename(&tmp, path)
    }

    fn persist(&self) {
        if let Some(path) = &self.snapshot_path {
            if let Err(e) = self.save_snapshot(path) {
                tracing::error!("failed to write snapshot {}: {e}", path.display());
            }
        }
    }

    fn entry(&self, id: &str) -> Result<Arc<Mutex<GameSession>>, ApiError> {
        self.sessions
            .read()
            .expect("store lock poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(id))
    }
}

pub fn load_snapshot(path: &Path) -> io::Result<Vec<GameSession>> {
    let bytes = fs::read(path)?;
    let snap: Snapshot = serde_json::from_slice(&bytes)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    if snap.version != SNAPSHOT_VERSION {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("unsupported snapshot version {}", snap.version),
        ));
    }
    Ok(snap.sessions)
}
