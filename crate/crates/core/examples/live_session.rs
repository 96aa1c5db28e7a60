//! Start the live-play service on a local port, create a session with one
//! human seat and two bots, and play the human seat through the HTTP API.
//! Pass `--serve` to keep the server running afterwards.
//!
//! cargo run --example live_session -- [--serve]

use std::sync::Arc;

use serde_json::{json, Value};
use tokio::io::{AsyncReadExt, AsyncWriteExt};
use tokio::net::TcpStream;
use tribridge::service::{spawn, SessionManager};

async fn post(addr: std::net::SocketAddr, path: &str, body: Value) -> std::io::Result<Value> {
    let body = body.to_string();
    let mut s = TcpStream::connect(addr).await?;
    let req = format!(
        "POST {path} HTTP/1.1\r\nHost: {addr}\r\nConnection: close\r\nContent-Type: application/json\r\nContent-Length: {}\r\n\r\n{body}",
        body.len()
    );
    s.write_all(req.as_bytes()).await?;
    let mut raw = String::new();
    s.read_to_string(&mut raw).await?;
    let payload = raw.split_once("\r\n\r\n").map_or("", |(_, b)| b);
    Ok(serde_json::from_str(payload).unwrap_or(Value::Null))
}

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manager = Arc::new(SessionManager::new());
    let (addr, server) = spawn("127.0.0.1:0".parse()?, manager.clone()).await?;
    println!("listening on http://{addr}");

    let created = post(
        addr,
        "/sessions",
        json!({"seats": ["human", "general+defensive", "hcf+attack"], "seed": 99, "autoNextDeal": false}),
    )
    .await?;
    let id = created["sessionId"].as_str().ok_or("session not created")?.to_string();
    println!("session {id}; seat 0 is human");

    let mut view = serde_json::to_value(manager.view(&id, 0)?)?;
    while view["phase"] != "finished" {
        // the human seat takes the first legal action each time
        let action = view["legalActions"][0].clone();
        println!("v{:<3} {:<8} seat 0 -> {action}", view["stateVersion"], view["phase"].as_str().unwrap_or(""));
        let body = json!({"seat": 0, "action": action, "stateVersion": view["stateVersion"]});
        view = post(addr, &format!("/sessions/{id}/actions"), body).await?;
        if view.get("rule").is_some() {
            return Err(format!("rejected: {view}").into());
        }
    }
    let result = &view["results"][0];
    println!("contract {}: declaring side took {} tricks", result["contract"], result["declarerTricks"]);
    for s in result["settlements"].as_array().into_iter().flatten() {
        println!("  {} {}", s["scheme"], s["perSeatDelta"]);
    }

    if std::env::args().any(|a| a == "--serve") {
        println!("serving; view with GET /sessions/{id}/seats/0/view");
        server.await?;
    }
    Ok(())
}
