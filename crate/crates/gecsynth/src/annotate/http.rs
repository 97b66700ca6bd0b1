//! Chat-completion backend over HTTP.

use std::time::Duration;

use serde_json::{json, Value};

use super::{BackendError, Completion, CompletionBackend};

pub struct HttpBackend {
    agent: ureq::Agent,
    url: String,
    model: String,
    credential: String,
}

impl HttpBackend {
    pub fn new(base_url: &str, model: &str, credential: String, timeout: Duration) -> Self {
        let agent = ureq::AgentBuilder::new().timeout(timeout).build();
        let url = format!("{}/chat/completions", base_url.trim_end_matches('/'));
        Self { agent, url, model: model.to_string(), credential }
    }
}

fn parse_completion(body: &Value) -> Result<Completion, BackendError> {
    let choice = body
        .get("choices")
        .and_then(|c| c.get(0))
        .ok_or_else(|| BackendError::Transient("response has no choices".into()))?;
    let message = choice.get("message").cloned().unwrap_or(Value::Null);
    if message.get("refusal").is_some_and(|r| !r.is_null()) || choice["finish_reason"] == "content_filter" {
        return Ok(Completion::Refused);
    }
    match message.get("content").and_then(Value::as_str) {
        Some(text) if !text.trim().is_empty() => Ok(Completion::Text(text.to_string())),
        _ => Ok(Completion::Refused),
    }
}

impl CompletionBackend for HttpBackend {
    fn complete(&self, prompt: &str) -> Result<Completion, BackendError> {
        let request = json!({
            "model": self.model,
            "temperature": 0,
            "messages": [{"role": "user", "content": prompt}],
        });
        let response = self
            .agent
            .post(&self.url)
            .set("Authorization", &format!("Bearer {}", self.credential))
            .send_json(request);
        match response {
            Ok(r) => {
                let body: Value = r.into_json().map_err(|e| BackendError::Transient(e.to_string()))?;
                parse_completion(&body)
            }
            Err(ureq::Error::Status(code, r)) => {
                let detail = format!("HTTP {code}: {}", r.into_string().unwrap_or_default());
                if code == 429 || code >= 500 {
                    Err(BackendError::Transient(detail))
                } else {
                    Err(BackendError::Permanent(detail))
                }
            }
            Err(e) => Err(BackendError::Transient(e.to_string())),
        }
    }
}
