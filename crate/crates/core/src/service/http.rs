use std::net::SocketAddr;
use std::sync::Arc;
use std::time::Duration;

use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;
use tokio::net::TcpListener;
use tokio::task::JoinHandle;

use super::wire::{handle, handle_text, Envelope};
use super::{Action, SessionConfig, SessionManager, ServiceError};
use crate::deck::Seat;

pub const DEFAULT_PORT: u16 = 8787;
pub const PORT_ENV: &str = "TRIBRIDGE_PORT";

/// Longest a long-poll request is held open.
const MAX_WAIT: Duration = Duration::from_secs(30);

type Shared = Arc<SessionManager>;

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.http_status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(json!({"rule": self.rule(), "message": self.to_string()}))).into_response()
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct ViewQuery {
    since: Option<u64>,
    timeout_ms: Option<u64>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct ActionBody {
    seat: Seat,
    action: Action,
    state_version: Option<u64>,
}

async fn create(State(m): State<Shared>, Json(config): Json<SessionConfig>) -> Response {
    match m.create(config) {
        Ok(c) => (StatusCode::CREATED, Json(c)).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn view(
    State(m): State<Shared>,
    Path((id, seat)): Path<(String, Seat)>,
    Query(q): Query<ViewQuery>,
) -> Response {
    let result = match q.since {
        Some(since) => {
            let wait = Duration::from_millis(q.timeout_ms.unwrap_or(25_000)).min(MAX_WAIT);
            m.wait_view(&id, seat, since, wait).await
        }
        None => m.view(&id, seat),
    };
    match result {
        Ok(v) => Json(v).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn act(State(m): State<Shared>, Path(id): Path<String>, Json(body): Json<ActionBody>) -> Response {
    match m.apply(&id, body.seat, body.action, body.state_version) {
        Ok(v) => Json(v).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn rpc(State(m): State<Shared>, Json(msg): Json<Envelope>) -> Json<Envelope> {
    Json(handle(&m, &msg))
}

async fn ws(State(m): State<Shared>, Path((id, seat)): Path<(String, Seat)>, upgrade: WebSocketUpgrade) -> Response {
    let rx = match m.subscribe(&id) {
        Ok(rx) => rx,
        Err(e) => return e.into_response(),
    };
    upgrade.on_upgrade(move |socket| ws_loop(socket, m, id, seat, rx))
}

async fn send(socket: &mut WebSocket, env: &Envelope) -> bool {
    let text = serde_json::to_string(env).expect("envelope serialises");
    socket.send(Message::Text(text.into())).await.is_ok()
}

/// Pushes the seat's view on connect and after every state change, and
/// answers envelopes sent by the client.
async fn ws_loop(
    mut socket: WebSocket,
    m: Shared,
    id: String,
    seat: Seat,
    mut rx: tokio::sync::watch::Receiver<u64>,
) {
    let push = |m: &SessionManager| match m.view(&id, seat) {
        Ok(v) => Envelope::view(&v),
        Err(e) => Envelope::error(Some(id.clone()), Some(seat), &e),
    };
    rx.mark_unchanged();
    if !send(&mut socket, &push(&m)).await {
        return;
    }
    loop {
        tokio::select! {
            changed = rx.changed() => {
                if changed.is_err() || !send(&mut socket, &push(&m)).await {
                    return;
                }
            }
            incoming = socket.recv() => {
                let text = match incoming {
                    Some(Ok(Message::Text(t))) => t,
                    Some(Ok(Message::Close(_))) | None | Some(Err(_)) => return,
                    Some(Ok(_)) => continue,
                };
                let reply = handle_text(&m, text.as_str());
                // state changes are delivered by the push branch
                if reply.kind == "view" && reply.session_id.as_deref() == Some(id.as_str()) && reply.seat == Some(seat) {
                    continue;
                }
                if !send(&mut socket, &reply).await {
                    return;
                }
            }
        }
    }
}

pub fn router(manager: Arc<SessionManager>) -> Router {
    Router::new()
        .route("/health", get(|| async { "ok" }))
        .route("/sessions", post(create))
        .route("/sessions/{id}/seats/{seat}/view", get(view))
        .route("/sessions/{id}/seats/{seat}/ws", get(ws))
        .route("/sessions/{id}/actions", post(act))
        .route("/rpc", post(rpc))
        .with_state(manager)
}

/// Serves until the process ends.
pub async fn serve(addr: SocketAddr, manager: Arc<SessionManager>) -> std::io::Result<()> {
    let listener = TcpListener::bind(addr).await?;
    axum::serve(listener, router(manager)).await
}

/// Binds (port 0 picks a free port) and serves in the background.
pub async fn spawn(addr: SocketAddr, manager: Arc<SessionManager>) -> std::io::Result<(SocketAddr, JoinHandle<()>)> {
    let listener = TcpListener::bind(addr).await?;
    let local = listener.local_addr()?;
    let app = router(manager);
    let handle = tokio::spawn(async move {
        let _ = axum::serve(listener, app).await;
    });
    Ok((local, handle))
}
