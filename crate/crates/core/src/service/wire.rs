//! JSON envelope shared by the WebSocket and `POST /rpc` transports.
//!
//! Every message is one JSON object (one WebSocket text frame, or one HTTP
//! body):
//!
//! ```json
//! {"type": "action", "sessionId": "s0-…", "seat": 1,
//!  "payload": {"call": "1NT"}, "stateVersion": 4}
//! ```
//!
//! Client → server types:
//! - `create`: payload is a session config, e.g.
//!   `{"seats": ["human", "general+defensive", "hcf+attack"], "seed": 7}`
//! - `view`: fetch the seat's view
//! - `action`: payload `{"call": "2H"}`, `{"play": "QS"}` or `"nextDeal"`;
//!   `stateVersion`, when present, must equal the current version
//! - `ping`
//!
//! Server → client types: `created` (payload `{sessionId, seed,
//! stateVersion, humanSeats}`), `view` (payload is a seat view, also pushed
//! on every state change over WebSocket), `error` (payload `{rule,
//! message}`), `pong`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{Action, SessionConfig, SessionManager, ServiceError};
use crate::deck::Seat;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Envelope {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub session_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seat: Option<Seat>,
    #[serde(default)]
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state_version: Option<u64>,
}

impl Envelope {
    pub fn new(kind: &str, session_id: Option<String>, seat: Option<Seat>, payload: Value) -> Envelope {
        Envelope { kind: kind.to_string(), session_id, seat, payload, state_version: None }
    }

    pub fn error(session_id: Option<String>, seat: Option<Seat>, e: &ServiceError) -> Envelope {
        Envelope::new("error", session_id, seat, json!({"rule": e.rule(), "message": e.to_string()}))
    }

    pub fn view(view: &super::SeatView) -> Envelope {
        Envelope {
            kind: "view".into(),
            session_id: Some(view.session_id.clone()),
            seat: Some(view.seat),
            payload: serde_json::to_value(view).expect("view serialises"),
            state_version: Some(view.state_version),
        }
    }
}

fn need<T>(v: Option<T>, what: &str) -> Result<T, ServiceError> {
    v.ok_or_else(|| ServiceError::BadMessage(format!("missing {what}")))
}

fn dispatch(manager: &SessionManager, msg: &Envelope) -> Result<Envelope, ServiceError> {
    match msg.kind.as_str() {
        "ping" => Ok(Envelope::new("pong", None, None, Value::Null)),
        "create" => {
            let config: SessionConfig =
                serde_json::from_value(msg.payload.clone()).map_err(|e| ServiceError::BadConfig(e.to_string()))?;
            let created = manager.create(config)?;
            let mut env = Envelope::new(
                "created",
                Some(created.session_id.clone()),
                None,
                serde_json::to_value(&created).expect("serialisable"),
            );
            env.state_version = Some(created.state_version);
            Ok(env)
        }
        "view" => {
            let id = need(msg.session_id.as_deref(), "sessionId")?;
            Ok(Envelope::view(&manager.view(id, need(msg.seat, "seat")?)?))
        }
        "action" => {
            let id = need(msg.session_id.as_deref(), "sessionId")?;
            let action: Action =
                serde_json::from_value(msg.payload.clone()).map_err(|e| ServiceError::BadMessage(e.to_string()))?;
            let view = manager.apply(id, need(msg.seat, "seat")?, action, msg.state_version)?;
            Ok(Envelope::view(&view))
        }
        other => Err(ServiceError::BadMessage(format!("unknown message type {other:?}"))),
    }
}

/// Handles one inbound message and returns the reply.
pub fn handle(manager: &SessionManager, msg: &Envelope) -> Envelope {
    dispatch(manager, msg).unwrap_or_else(|e| Envelope::error(msg.session_id.clone(), msg.seat, &e))
}

/// Parses and handles one text frame.
pub fn handle_text(manager: &SessionManager, text: &str) -> Envelope {
    match serde_json::from_str::<Envelope>(text) {
        Ok(msg) => handle(manager, &msg),
        Err(e) => Envelope::error(None, None, &ServiceError::BadMessage(e.to_string())),
    }
}
