//! Chat-completion client with a content-addressed response cache.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Condvar, Mutex};
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GatewayError {
    #[error("transport failure after {attempts} attempts: {message}")]
    Transport { attempts: u32, message: String },
    #[error("environment variable {0} holding the API key is not set")]
    AuthMissing(String),
    #[error("provider returned status {status}: {body}")]
    ProviderError { status: u16, body: String },
    #[error("offline and no cached response for model {model}, prompt hash {hash}")]
    CacheOnlyMiss { model: String, hash: String },
    #[error("cache entry {path}: {message}")]
    Cache { path: String, message: String },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    /// OpenAI-style `/chat/completions` over HTTP.
    #[default]
    Http,
    /// Canned answers from `mock_fixtures`.
    Mock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelConfig {
    pub endpoint: String,
    pub model: String,
    /// Name of the environment variable holding the key; the key itself is
    /// never stored.
    pub api_key_env: String,
    pub temperature: f64,
    pub max_tokens: u32,
    pub timeout_secs: u64,
    pub max_retries: u32,
    /// First retry delay; doubled on every further attempt.
    pub backoff_ms: u64,
    pub max_in_flight: usize,
    pub backend: BackendKind,
    /// JSON file mapping prompt text to response text (mock backend).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mock_fixtures: Option<PathBuf>,
    /// Extra top-level fields merged into every request body.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, Value>,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            endpoint: "https://api.openai.com/v1/chat/completions".into(),
            model: "gpt-4o".into(),
            api_key_env: "OPENAI_API_KEY".into(),
            temperature: 0.0,
            max_tokens: 2048,
            timeout_secs: 120,
            max_retries: 4,
            backoff_ms: 500,
            max_in_flight: 4,
            backend: BackendKind::Http,
            mock_fixtures: None,
            extra: BTreeMap::new(),
        }
    }
}

impl ModelConfig {
    pub fn mock(model: &str) -> ModelConfig {
        ModelConfig { model: model.into(), backend: BackendKind::Mock, backoff_ms: 0, ..ModelConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exchange {
    pub hash: String,
    pub model: String,
    pub temperature: f64,
    /// User messages in sending order.
    pub messages: Vec<String>,
    pub response: String,
    /// Seconds since the Unix epoch when the response arrived.
    pub timestamp: u64,
    pub latency_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt_tokens: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completion_tokens: Option<u64>,
}

/// Stable digest of (model, temperature, messages).
pub fn prompt_hash(model: &str, temperature: f64, messages: &[String]) -> String {
    let key = json!({ "model": model, "temperature": temperature, "messages": messages });
    hex::encode(Sha256::digest(key.to_string().as_bytes()))
}

/// What a backend hands back for one request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reply {
    pub text: String,
    pub prompt_tokens: Option<u64>,
    pub completion_tokens: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendError {
    /// Worth another attempt (connection trouble, 429, 5xx).
    Retryable(String),
    Status {
        status: u16,
        body: String,
    },
    AuthMissing(String),
}

pub trait Backend: Send + Sync {
    fn send(&self, config: &ModelConfig, messages: &[String]) -> Result<Reply, BackendError>;
}

pub struct HttpBackend {
    agent: ureq::Agent,
}

impl HttpBackend {
    pub fn new(config: &ModelConfig) -> HttpBackend {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(config.timeout_secs)))
            .http_status_as_error(false)
            .build()
            .into();
        HttpBackend { agent }
    }
}

pub fn request_body(config: &ModelConfig, messages: &[String]) -> Value {
    let msgs: Vec<Value> = messages.iter().map(|m| json!({ "role": "user", "content": m })).collect();
    let mut body = json!({
        "model": config.model,
        "messages": msgs,
        "temperature": config.temperature,
        "max_tokens": config.max_tokens,
    });
    if let Value::Object(map) = &mut body {
        for (k, v) in &config.extra {
            map.insert(k.clone(), v.clone());
        }
    }
    body
}

pub fn parse_reply(body: &str) -> Result<Reply, String> {
    let v: Value = serde_json::from_str(body).map_err(|e| e.to_string())?;
    let text = v
        .pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .ok_or_else(|| "no choices[0].message.content in reply".to_string())?;
    Ok(Reply {
        text: text.to_string(),
        prompt_tokens: v.pointer("/usage/prompt_tokens").and_then(Value::as_u64),
        completion_tokens: v.pointer("/usage/completion_tokens").and_then(Value::as_u64),
    })
}

impl Backend for HttpBackend {
    fn send(&self, config: &ModelConfig, messages: &[String]) -> Result<Reply, BackendError> {
        let key = std::env::var(&config.api_key_env).map_err(|_| BackendError::AuthMissing(config.api_key_env.clone()))?;
        let body = request_body(config, messages).to_string();
        let mut resp = self
            .agent
            .post(&config.endpoint)
            .header("Authorization", &format!("Bearer {key}"))
            .header("Content-Type", "application/json")
            .send(body.as_str())
            .map_err(|e| BackendError::Retryable(e.to_string()))?;
        let status = resp.status().as_u16();
        let text = resp.body_mut().read_to_string().map_err(|e| BackendError::Retryable(e.to_string()))?;
        match status {
            200..=299 => parse_reply(&text).map_err(|e| BackendError::Status { status, body: e }),
            429 | 500..=599 => Err(BackendError::Retryable(format!("status {status}: {text}"))),
            _ => Err(BackendError::Status { status, body: text }),
        }
    }
}

/// Answers from a fixed map keyed by the messages joined with blank lines.
/// Tracks call counts and peak concurrency for tests.
#[derive(Default)]
pub struct MockBackend {
    pub fixtures: BTreeMap<String, String>,
    /// Used when no fixture matches; a miss is a 404 otherwise.
    pub fallback: Option<String>,
    /// Simulated service time.
    pub delay: Duration,
    /// Fail this many calls with a retryable error before answering.
    pub fail_first: usize,
    calls: AtomicUsize,
    in_flight: AtomicUsize,
    peak: AtomicUsize,
}

impl MockBackend {
    pub fn new(fixtures: BTreeMap<String, String>) -> MockBackend {
        MockBackend { fixtures, ..MockBackend::default() }
    }

    pub fn with_fallback(mut self, text: &str) -> MockBackend {
        self.fallback = Some(text.to_string());
        self
    }

    pub fn with_delay(mut self, delay: Duration) -> MockBackend {
        self.delay = delay;
        self
    }

    pub fn failing_first(mut self, n: usize) -> MockBackend {
        self.fail_first = n;
        self
    }

    pub fn from_file(path: &Path) -> Result<MockBackend, GatewayError> {
        let err = |message: String| GatewayError::Cache { path: path.display().to_string(), message };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        let fixtures = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
        Ok(MockBackend::new(fixtures))
    }

    pub fn key(messages: &[String]) -> String {
        messages.join("\n\n")
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }

    pub fn peak_in_flight(&self) -> usize {
        self.peak.load(Ordering::SeqCst)
    }
}

impl Backend for MockBackend {
    fn send(&self, _config: &ModelConfig, messages: &[String]) -> Result<Reply, BackendError> {
        let n = self.calls.fetch_add(1, Ordering::SeqCst);
        let now = self.in_flight.fetch_add(1, Ordering::SeqCst) + 1;
        self.peak.fetch_max(now, Ordering::SeqCst);
        if !self.delay.is_zero() {
            std::thread::sleep(self.delay);
        }
        self.in_flight.fetch_sub(1, Ordering::SeqCst);
        if n < self.fail_first {
            return Err(BackendError::Retryable("simulated outage".into()));
        }
        match self.fixtures.get(&MockBackend::key(messages)).or(self.fallback.as_ref()) {
            Some(text) => Ok(Reply { text: text.clone(), prompt_tokens: None, completion_tokens: None }),
            None => Err(BackendError::Status { status: 404, body: "no fixture for prompt".into() }),
        }
    }
}

/// Caps the number of requests in flight; shared by everything calling one
/// provider.
pub struct Limiter {
    max: usize,
    current: Mutex<usize>,
    freed: Condvar,
}

pub struct Permit<'a>(&'a Limiter);

impl Limiter {
    pub fn new(max: usize) -> Limiter {
        Limiter { max: max.max(1), current: Mutex::new(0), freed: Condvar::new() }
    }

    pub fn acquire(&self) -> Permit<'_> {
        let mut n = self.current.lock().expect("limiter lock");
        while *n >= self.max {
            n = self.freed.wait(n).expect("limiter lock");
        }
        *n += 1;
        Permit(self)
    }
}

impl Drop for Permit<'_> {
    fn drop(&mut self) {
        *self.0.current.lock().expect("limiter lock") -= 1;
        self.0.freed.notify_one();
    }
}

/// `cache/<model>/<hash>.json` files, written atomically.
pub struct CacheStore {
    root: PathBuf,
    write: Mutex<()>,
}

fn dir_name(model: &str) -> String {
    model.chars().map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' }).collect()
}

impl CacheStore {
    pub fn new(root: impl Into<PathBuf>) -> CacheStore {
        CacheStore { root: root.into(), write: Mutex::new(()) }
    }

    pub fn path(&self, model: &str, hash: &str) -> PathBuf {
        self.root.join(dir_name(model)).join(format!("{hash}.json"))
    }

    pub fn get(&self, model: &str, hash: &str) -> Result<Option<Exchange>, GatewayError> {
        let path = self.path(model, hash);
        let err = |message: String| GatewayError::Cache { path: path.display().to_string(), message };
        match std::fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text).map(Some).map_err(|e| err(e.to_string())),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(err(e.to_string())),
        }
    }

    pub fn put(&self, ex: &Exchange) -> Result<(), GatewayError> {
        let path = self.path(&ex.model, &ex.hash);
        let err = |message: String| GatewayError::Cache { path: path.display().to_string(), message };
        let text = serde_json::to_string_pretty(ex).map_err(|e| err(e.to_string()))?;
        let _guard = self.write.lock().expect("cache lock");
        std::fs::create_dir_all(path.parent().expect("cache path has a parent")).map_err(|e| err(e.to_string()))?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text + "\n").map_err(|e| err(e.to_string()))?;
        std::fs::rename(&tmp, &path).map_err(|e| err(e.to_string()))
    }
}

pub struct Gateway {
    pub config: ModelConfig,
    backend: Arc<dyn Backend>,
    cache: Option<CacheStore>,
    offline: bool,
    limiter: Arc<Limiter>,
}

impl Gateway {
    pub fn new(config: ModelConfig, backend: Arc<dyn Backend>) -> Gateway {
        let limiter = Arc::new(Limiter::new(config.max_in_flight));
        Gateway { config, backend, cache: None, offline: false, limiter }
    }

    /// Backend chosen by `config.backend`.
    pub fn from_config(config: ModelConfig) -> Result<Gateway, GatewayError> {
        let backend: Arc<dyn Backend> = match (&config.backend, &config.mock_fixtures) {
            (BackendKind::Http, _) => Arc::new(HttpBackend::new(&config)),
            (BackendKind::Mock, Some(path)) => Arc::new(MockBackend::from_file(path)?),
            (BackendKind::Mock, None) => Arc::new(MockBackend::default()),
        };
        Ok(Gateway::new(config, backend))
    }

    pub fn with_cache(mut self, root: impl Into<PathBuf>) -> Gateway {
        self.cache = Some(CacheStore::new(root));
        self
    }

    /// Serve from cache only; never touch the backend.
    pub fn offline(mut self, offline: bool) -> Gateway {
        self.offline = offline;
        self
    }

    /// Share an in-flight cap with other gateways for the same provider.
    pub fn with_limiter(mut self, limiter: Arc<Limiter>) -> Gateway {
        self.limiter = limiter;
        self
    }

    pub fn complete(&self, prompt: &str) -> Result<Exchange, GatewayError> {
        self.complete_messages(&[prompt.to_string()])
    }

    pub fn complete_messages(&self, messages: &[String]) -> Result<Exchange, GatewayError> {
        let hash = prompt_hash(&self.config.model, self.config.temperature, messages);
        if let Some(cache) = &self.cache {
            if let Some(hit) = cache.get(&self.config.model, &hash)? {
                return Ok(hit);
            }
        }
        if self.offline {
            return Err(GatewayError::CacheOnlyMiss { model: self.config.model.clone(), hash });
        }
        let started = Instant::now();
        let reply = self.send_with_retry(messages)?;
        let ex = Exchange {
            hash,
            model: self.config.model.clone(),
            temperature: self.config.temperature,
            messages: messages.to_vec(),
            response: reply.text,
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            latency_ms: started.elapsed().as_millis() as u64,
            prompt_tokens: reply.prompt_tokens,
            completion_tokens: reply.completion_tokens,
        };
        if let Some(cache) = &self.cache {
            cache.put(&ex)?;
        }
        Ok(ex)
    }

    fn send_with_retry(&self, messages: &[String]) -> Result<Reply, GatewayError> {
        let mut attempt = 0u32;
        loop {
            let result = {
                let _permit = self.limiter.acquire();
                self.backend.send(&self.config, messages)
            };
            match result {
                Ok(r) => return Ok(r),
                Err(BackendError::AuthMissing(var)) => return Err(GatewayError::AuthMissing(var)),
                Err(BackendError::Status { status, body }) => return Err(GatewayError::ProviderError { status, body }),
                Err(BackendError::Retryable(message)) => {
                    attempt += 1;
                    if attempt > self.config.max_retries {
                        return Err(GatewayError::Transport { attempts: attempt, message });
                    }
                    let delay = self.config.backoff_ms.saturating_mul(1 << (attempt - 1).min(16));
                    std::thread::sleep(Duration::from_millis(delay));
                }
            }
        }
    }

    /// Completes every conversation, `max_in_flight` at a time; results
    /// keep the input order.
    pub fn complete_all(&self, conversations: &[Vec<String>]) -> Vec<Result<Exchange, GatewayError>> {
        let workers = self.config.max_in_flight.clamp(1, conversations.len().max(1));
        let next = AtomicUsize::new(0);
        let slots: Vec<Mutex<Option<Result<Exchange, GatewayError>>>> = conversations.iter().map(|_| Mutex::new(None)).collect();
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    let Some(conv) = conversations.get(i) else { break };
                    *slots[i].lock().expect("slot lock") = Some(self.complete_messages(conv));
                });
            }
        });
        slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every slot filled")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_and_sensitive() {
        let m = vec!["hi".to_string()];
        assert_eq!(prompt_hash("a", 0.0, &m), prompt_hash("a", 0.0, &m));
        assert_ne!(prompt_hash("a", 0.0, &m), prompt_hash("b", 0.0, &m));
        assert_ne!(prompt_hash("a", 0.0, &m), prompt_hash("a", 0.5, &m));
        assert_ne!(prompt_hash("a", 0.0, &["h".into(), "i".into()]), prompt_hash("a", 0.0, &["hi".into()]));
        assert_eq!(prompt_hash("a", 0.0, &m).len(), 64);
    }

    #[test]
    fn request_and_reply_shapes() {
        let mut c = ModelConfig::mock("m");
        c.extra.insert("top_p".into(), json!(1));
        let body = request_body(&c, &["x".into()]);
        assert_eq!(body["messages"][0]["content"], "x");
        assert_eq!(body["top_p"], 1);
        let r = parse_reply(r#"{"choices":[{"message":{"content":"ok"}}],"usage":{"prompt_tokens":3}}"#).unwrap();
        assert_eq!((r.text.as_str(), r.prompt_tokens, r.completion_tokens), ("ok", Some(3), None));
        assert!(parse_reply("{}").is_err());
    }

    #[test]
    fn config_never_carries_a_key() {
        let text = serde_json::to_string(&ModelConfig::default()).unwrap();
        assert!(text.contains("OPENAI_API_KEY") && !text.contains("Bearer"));
    }

    #[test]
    fn missing_key_is_reported() {
        let mut c = ModelConfig { api_key_env: "DLLITE_SURELY_UNSET_KEY".into(), max_retries: 0, ..ModelConfig::default() };
        c.endpoint = "http://127.0.0.1:9/none".into();
        let g = Gateway::new(c.clone(), Arc::new(HttpBackend::new(&c)));
        assert!(matches!(g.complete("x"), Err(GatewayError::AuthMissing(v)) if v == "DLLITE_SURELY_UNSET_KEY"));
    }
}
