//! Live-play sessions: humans in one or more seats, bots in the rest.
//!
//! Each seat only ever receives a [`SeatView`]. Actions are serialised per
//! session and may carry the `stateVersion` they were based on; a stale
//! version is rejected with a conflict. Transport is HTTP (with long-poll)
//! and WebSocket, both speaking the JSON envelope in [`wire`].

mod http;
mod manager;
mod session;
pub mod wire;

use thiserror::Error;

use crate::auction::AuctionError;
use crate::deck::Seat;
use crate::play::PlayError;

pub use http::{router, serve, spawn, DEFAULT_PORT, PORT_ENV};
pub use manager::{Created, SessionManager};
pub use session::{Action, DealResult, PhaseName, SeatKind, SeatView, Session, SessionConfig, TrickCard};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ServiceError {
    #[error("no session {0:?}")]
    NotFound(String),
    #[error("no seat {0}")]
    NoSuchSeat(Seat),
    #[error("invalid session config: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Auction(#[from] AuctionError),
    #[error(transparent)]
    Play(#[from] PlayError),
    #[error("seat {seat} cannot act now; waiting on seat {expected}")]
    NotYourTurn { seat: Seat, expected: Seat },
    #[error("{action} is not allowed during the {phase} phase")]
    WrongPhase { phase: &'static str, action: String },
    #[error("stale state version {got}; current is {current}")]
    Conflict { got: u64, current: u64 },
    #[error("bot in seat {0} failed: {1}")]
    BotFailure(Seat, String),
    #[error("bad message: {0}")]
    BadMessage(String),
}

impl ServiceError {
    /// Machine-readable rule or error name.
    pub fn rule(&self) -> &'static str {
        match self {
            ServiceError::NotFound(_) | ServiceError::NoSuchSeat(_) => "not-found",
            ServiceError::BadConfig(_) => "session-config",
            ServiceError::Auction(e) => e.rule(),
            ServiceError::Play(e) => e.rule(),
            ServiceError::NotYourTurn { .. } => "turn-order",
            ServiceError::WrongPhase { .. } => "phase",
            ServiceError::Conflict { .. } => "state-version-conflict",
            ServiceError::BotFailure(..) => "bot-failure",
            ServiceError::BadMessage(_) => "bad-message",
        }
    }

    pub fn http_status(&self) -> u16 {
        match self {
            ServiceError::NotFound(_) | ServiceError::NoSuchSeat(_) => 404,
            ServiceError::BadConfig(_) | ServiceError::BadMessage(_) => 400,
            ServiceError::Conflict { .. } => 409,
            ServiceError::BotFailure(..) => 500,
            _ => 422,
        }
    }
}
