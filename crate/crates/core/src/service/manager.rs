use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Duration;

use serde::Serialize;
use tokio::sync::watch;

use super::{Action, SeatView, ServiceError, Session, SessionConfig};
use crate::deck::Seat;

struct Slot {
    session: Mutex<Session>,
    version: watch::Sender<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Created {
    pub session_id: String,
    pub seed: u64,
    pub state_version: u64,
    pub human_seats: Vec<Seat>,
}

/// All live sessions of one server.
#[derive(Default)]
pub struct SessionManager {
    sessions: Mutex<HashMap<String, Arc<Slot>>>,
    counter: AtomicU64,
}

impl SessionManager {
    pub fn new() -> SessionManager {
        SessionManager::default()
    }

    pub fn create(&self, config: SessionConfig) -> Result<Created, ServiceError> {
        let n = self.counter.fetch_add(1, Ordering::Relaxed);
        let seed = config.seed.unwrap_or_else(rand::random);
        let id = format!("s{n}-{:016x}", rand::random::<u64>());
        let human_seats = config
            .seats
            .iter()
            .enumerate()
            .filter(|(_, k)| **k == super::SeatKind::Human)
            .map(|(i, _)| i)
            .collect();
        let session = Session::new(id.clone(), config, seed)?;
        let state_version = session.version();
        let (tx, _) = watch::channel(state_version);
        let slot = Arc::new(Slot { session: Mutex::new(session), version: tx });
        self.sessions.lock().unwrap().insert(id.clone(), slot);
        Ok(Created { session_id: id, seed, state_version, human_seats })
    }

    fn slot(&self, id: &str) -> Result<Arc<Slot>, ServiceError> {
        self.sessions.lock().unwrap().get(id).cloned().ok_or_else(|| ServiceError::NotFound(id.to_string()))
    }

    pub fn remove(&self, id: &str) -> bool {
        self.sessions.lock().unwrap().remove(id).is_some()
    }

    pub fn view(&self, id: &str, seat: Seat) -> Result<SeatView, ServiceError> {
        self.slot(id)?.session.lock().unwrap().view(seat)
    }

    /// Applies `action` if `expected_version` (when given) is current.
    pub fn apply(
        &self,
        id: &str,
        seat: Seat,
        action: Action,
        expected_version: Option<u64>,
    ) -> Result<SeatView, ServiceError> {
        let slot = self.slot(id)?;
        let mut session = slot.session.lock().unwrap();
        if let Some(got) = expected_version {
            if got != session.version() {
                return Err(ServiceError::Conflict { got, current: session.version() });
            }
        }
        let version = session.apply(seat, action)?;
        let view = session.view(seat)?;
        drop(session);
        slot.version.send_replace(version);
        Ok(view)
    }

    pub fn subscribe(&self, id: &str) -> Result<watch::Receiver<u64>, ServiceError> {
        Ok(self.slot(id)?.version.subscribe())
    }

    /// Long-poll: waits until the state version exceeds `since` or the
    /// timeout passes, then returns the current view.
    pub async fn wait_view(&self, id: &str, seat: Seat, since: u64, timeout: Duration) -> Result<SeatView, ServiceError> {
        let mut rx = self.subscribe(id)?;
        let _ = tokio::time::timeout(timeout, rx.wait_for(|v| *v > since)).await;
        self.view(id, seat)
    }

    /// Runs `f` with the session locked (tests and tooling).
    pub fn with_session<T>(&self, id: &str, f: impl FnOnce(&Session) -> T) -> Result<T, ServiceError> {
        Ok(f(&self.slot(id)?.session.lock().unwrap()))
    }
}
