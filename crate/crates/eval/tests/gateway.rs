use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Duration;

use dllite_eval::gateway::{prompt_hash, Gateway, GatewayError, Limiter, MockBackend, ModelConfig};

fn fixtures() -> BTreeMap<String, String> {
    [("What is 1?".to_string(), "1. This is syntactically correct.".to_string())].into_iter().collect()
}

#[test]
fn mock_returns_fixture_verbatim_and_cache_absorbs_repeats() {
    let dir = tempfile::tempdir().unwrap();
    let mock = Arc::new(MockBackend::new(fixtures()));
    let g = Gateway::new(ModelConfig::mock("m1"), mock.clone()).with_cache(dir.path());
    let first = g.complete("What is 1?").unwrap();
    assert_eq!(first.response, "1. This is syntactically correct.");
    assert_eq!(mock.calls(), 1);
    let second = g.complete("What is 1?").unwrap();
    assert_eq!(mock.calls(), 1, "second call must be served from cache");
    assert_eq!(first, second);

    let path = dir.path().join("m1").join(format!("{}.json", prompt_hash("m1", 0.0, &["What is 1?".into()])));
    assert!(path.is_file(), "{}", path.display());

    // a different temperature is a different cache key
    let mut warm = ModelConfig::mock("m1");
    warm.temperature = 0.7;
    let g2 = Gateway::new(warm, mock.clone()).with_cache(dir.path());
    g2.complete("What is 1?").unwrap();
    assert_eq!(mock.calls(), 2);
}

#[test]
fn offline_serves_only_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let mock = Arc::new(MockBackend::new(fixtures()));
    Gateway::new(ModelConfig::mock("m"), mock.clone()).with_cache(dir.path()).complete("What is 1?").unwrap();
    let offline = Gateway::new(ModelConfig::mock("m"), mock.clone()).with_cache(dir.path()).offline(true);
    assert!(offline.complete("What is 1?").is_ok());
    assert!(matches!(offline.complete("unseen"), Err(GatewayError::CacheOnlyMiss { .. })));
    assert_eq!(mock.calls(), 1);
}

#[test]
fn retries_then_gives_up() {
    let mock = Arc::new(MockBackend::new(fixtures()).failing_first(2));
    let mut config = ModelConfig::mock("m");
    config.max_retries = 2;
    config.backoff_ms = 1;
    assert!(Gateway::new(config.clone(), mock.clone()).complete("What is 1?").is_ok());
    assert_eq!(mock.calls(), 3);

    let mock = Arc::new(MockBackend::new(fixtures()).failing_first(5));
    let err = Gateway::new(config, mock.clone()).complete("What is 1?").unwrap_err();
    assert!(matches!(err, GatewayError::Transport { attempts: 3, .. }), "{err}");
    assert_eq!(mock.calls(), 3);
}

#[test]
fn non_retryable_status_is_a_provider_error() {
    let mock = Arc::new(MockBackend::new(BTreeMap::new()));
    let err = Gateway::new(ModelConfig::mock("m"), mock.clone()).complete("nothing").unwrap_err();
    assert!(matches!(err, GatewayError::ProviderError { status: 404, .. }));
    assert_eq!(mock.calls(), 1);
}

#[test]
fn in_flight_requests_are_capped() {
    let mock = Arc::new(MockBackend::default().with_fallback("ok").with_delay(Duration::from_millis(15)));
    let mut config = ModelConfig::mock("m");
    config.max_in_flight = 2;
    let g = Gateway::new(config, mock.clone());
    let convs: Vec<Vec<String>> = (0..12).map(|i| vec![format!("p{i}")]).collect();
    let out = g.complete_all(&convs);
    assert!(out.iter().all(|r| r.as_ref().unwrap().response == "ok"));
    assert_eq!(mock.calls(), 12);
    assert_eq!(mock.peak_in_flight(), 2);
    for (r, c) in out.iter().zip(&convs) {
        assert_eq!(r.as_ref().unwrap().messages, *c);
    }

    // two gateways sharing one limiter stay under the shared cap
    let shared = Arc::new(Limiter::new(3));
    let mock = Arc::new(MockBackend::default().with_fallback("ok").with_delay(Duration::from_millis(10)));
    let mut config = ModelConfig::mock("m");
    config.max_in_flight = 8;
    let a = Gateway::new(config.clone(), mock.clone()).with_limiter(shared.clone());
    let b = Gateway::new(config, mock.clone()).with_limiter(shared);
    std::thread::scope(|s| {
        s.spawn(|| a.complete_all(&convs));
        s.spawn(|| b.complete_all(&convs));
    });
    assert_eq!(mock.calls(), 24);
    assert!(mock.peak_in_flight() <= 3);
}

#[test]
fn mock_fixture_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixtures.json");
    let key = MockBackend::key(&["part one".into(), "part two".into()]);
    std::fs::write(&path, serde_json::to_string(&BTreeMap::from([(key, "1. true")])).unwrap()).unwrap();
    let mut config = ModelConfig::mock("m");
    config.mock_fixtures = Some(path);
    let g = Gateway::from_config(config).unwrap();
    assert_eq!(g.complete_messages(&["part one".into(), "part two".into()]).unwrap().response, "1. true");
}
