//! Three-player auction bridge: deals, auction, trick play, scoring,
//! bidding and play policies, probability tools, batch experiments and a
//! live-play session service.

pub mod analytics;
pub mod auction;
pub mod cli;
pub mod deck;
pub mod harness;
pub mod play;
pub mod policy;
pub mod scoring;
pub mod service;
