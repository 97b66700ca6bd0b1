//! Local chat-completion endpoint for tests and dry runs. It answers from a
//! script, records how it was called, and never touches the network beyond
//! the loopback interface.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread::{self, JoinHandle};
use std::time::Duration;

use serde_json::{json, Value};

/// What the stub does with one request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StubReply {
    Correct(String),
    Refuse,
    /// Respond with this HTTP status and no completion.
    Fail(u16),
}

type Responder = dyn Fn(&str, u32) -> StubReply + Send + Sync;
type Delay = dyn Fn(&str) -> Duration + Send + Sync;

#[derive(Debug, Default)]
pub struct StubStats {
    requests: AtomicUsize,
    in_flight: AtomicUsize,
    max_in_flight: AtomicUsize,
    per_sentence: Mutex<HashMap<String, u32>>,
}

impl StubStats {
    pub fn requests(&self) -> usize {
        self.requests.load(Ordering::SeqCst)
    }

    pub fn max_in_flight(&self) -> usize {
        self.max_in_flight.load(Ordering::SeqCst)
    }

    /// Requests seen for one sentence.
    pub fn requests_for(&self, sentence: &str) -> u32 {
        self.per_sentence.lock().unwrap().get(sentence).copied().unwrap_or(0)
    }

    fn begin(&self, sentence: &str) -> u32 {
        self.requests.fetch_add(1, Ordering::SeqCst);
        let now = self.in_flight.fetch_add(1, Ordering::SeqCst) + 1;
        self.max_in_flight.fetch_max(now, Ordering::SeqCst);
        let mut map = self.per_sentence.lock().unwrap();
        let n = map.entry(sentence.to_string()).or_default();
        *n += 1;
        *n
    }

    fn end(&self) {
        self.in_flight.fetch_sub(1, Ordering::SeqCst);
    }
}

pub struct StubServer {
    addr: SocketAddr,
    stats: Arc<StubStats>,
    stop: Arc<AtomicBool>,
    accept: Option<JoinHandle<()>>,
}

impl StubServer {
    /// Starts on an ephemeral loopback port. `respond` receives the sentence
    /// (the last line of the prompt) and the 1-based request count for it;
    /// `delay` is applied before answering.
    pub fn start<R, D>(respond: R, delay: D) -> std::io::Result<Self>
    where
        R: Fn(&str, u32) -> StubReply + Send + Sync + 'static,
        D: Fn(&str) -> Duration + Send + Sync + 'static,
    {
        let listener = TcpListener::bind("127.0.0.1:0")?;
        let addr = listener.local_addr()?;
        let stats = Arc::new(StubStats::default());
        let stop = Arc::new(AtomicBool::new(false));
        let respond: Arc<Responder> = Arc::new(respond);
        let delay: Arc<Delay> = Arc::new(delay);
        let accept = {
            let (stats, stop) = (stats.clone(), stop.clone());
            thread::spawn(move || {
                for stream in listener.incoming() {
                    if stop.load(Ordering::SeqCst) {
                        break;
                    }
                    let Ok(stream) = stream else { continue };
                    let (stats, respond, delay) = (stats.clone(), respond.clone(), delay.clone());
                    thread::spawn(move || {
                        let _ = serve(stream, &stats, &*respond, &*delay);
                    });
                }
            })
        };
        Ok(Self { addr, stats, stop, accept: Some(accept) })
    }

    /// Answers every sentence with `correction`.
    pub fn fixed(correction: &str) -> std::io::Result<Self> {
        let c = correction.to_string();
        Self::start(move |_, _| StubReply::Correct(c.clone()), |_| Duration::ZERO)
    }

    pub fn base_url(&self) -> String {
        format!("http://{}", self.addr)
    }

    pub fn stats(&self) -> &StubStats {
        &self.stats
    }
}

impl Drop for StubServer {
    fn drop(&mut self) {
        self.stop.store(true, Ordering::SeqCst);
        let _ = TcpStream::connect(self.addr);
        if let Some(h) = self.accept.take() {
            let _ = h.join();
        }
    }
}

fn serve(stream: TcpStream, stats: &StubStats, respond: &Responder, delay: &Delay) -> std::io::Result<()> {
    let mut reader = BufReader::new(stream.try_clone()?);
    let mut length = 0usize;
    let mut line = String::new();
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            return Ok(());
        }
        let header = line.trim_end();
        if header.is_empty() {
            break;
        }
        if let Some((name, value)) = header.split_once(':') {
            if name.eq_ignore_ascii_case("content-length") {
                length = value.trim().parse().unwrap_or(0);
            }
        }
    }
    let mut body = vec![0; length];
    reader.read_exact(&mut body)?;
    let request: Value = serde_json::from_slice(&body).unwrap_or(Value::Null);
    let prompt = request["messages"][0]["content"].as_str().unwrap_or_default();
    let sentence = prompt.lines().last().unwrap_or_default().to_string();

    let nth = stats.begin(&sentence);
    thread::sleep(delay(&sentence));
    let (code, payload) = match respond(&sentence, nth) {
        StubReply::Correct(text) => (
            200,
            json!({"choices": [{"index": 0, "message": {"role": "assistant", "content": text}, "finish_reason": "stop"}]}),
        ),
        StubReply::Refuse => (
            200,
            json!({"choices": [{"index": 0, "message": {"role": "assistant", "content": null, "refusal": "declined"}, "finish_reason": "stop"}]}),
        ),
        StubReply::Fail(code) => (code, json!({"error": {"message": "scripted failure"}})),
    };
    let body = payload.to_string();
    // Counted as finished before the client can see the answer, so a client
    // that immediately sends its next request is never double counted.
    stats.end();
    let mut out = stream;
    write!(
        out,
        "HTTP/1.1 {code} STUB\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .and_then(|()| out.flush())
}
