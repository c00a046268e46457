//! Where pages come from: the live portal over HTTP, or an on-disk fixture
//! directory keyed by URL hash.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use museumviz_core::catalog::sha256_hex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("fetching {url} failed: {cause}")]
pub struct FetchError {
    pub url: String,
    pub cause: String,
}

pub trait PageSource {
    fn fetch(&mut self, url: &str) -> Result<String, FetchError>;

    /// True when fetches reach the network (and therefore honour politeness delays).
    fn is_network(&self) -> bool;
}

/// File name a URL maps to inside a fixture directory: `sha256(url)` in
/// lowercase hex followed by `.html`.
pub fn fixture_file_name(url: &str) -> String {
    format!("{}.html", sha256_hex(url))
}

#[derive(Debug, Clone)]
pub struct FixtureSource {
    dir: PathBuf,
}

impl FixtureSource {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FixtureSource { dir: dir.into() }
    }

    pub fn path_for(&self, url: &str) -> PathBuf {
        self.dir.join(fixture_file_name(url))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

impl PageSource for FixtureSource {
    fn fetch(&mut self, url: &str) -> Result<String, FetchError> {
        let path = self.path_for(url);
        let bytes = std::fs::read(&path).map_err(|e| FetchError {
            url: url.into(),
            cause: format!("fixture file {}: {e}", path.display()),
        })?;
        // Portal pages are not always valid UTF-8.
        Ok(String::from_utf8_lossy(&bytes).into_owned())
    }

    fn is_network(&self) -> bool {
        false
    }
}

pub fn default_user_agent() -> String {
    format!(
        "museumviz/{} (collection harvester)",
        env!("CARGO_PKG_VERSION")
    )
}

/// Blocking HTTP source. Consecutive requests to the same origin are spaced
/// at least `delay` apart.
pub struct HttpSource {
    client: reqwest::blocking::Client,
    delay: Duration,
    last_hit: HashMap<String, Instant>,
}

impl HttpSource {
    pub fn new(user_agent: &str, delay: Duration) -> Result<Self, FetchError> {
        let client = reqwest::blocking::Client::builder()
            .user_agent(user_agent)
            .timeout(Duration::from_secs(30))
            .build()
            .map_err(|e| FetchError {
                url: String::new(),
                cause: format!("cannot build HTTP client: {e}"),
            })?;
        Ok(HttpSource {
            client,
            delay,
            last_hit: HashMap::new(),
        })
    }

    fn wait_for(&mut self, url: &str) {
        let origin = url::Url::parse(url)
            .map(|u| u.origin().ascii_serialization())
            .unwrap_or_default();
        if let Some(prev) = self.last_hit.get(&origin) {
            let elapsed = prev.elapsed();
            if elapsed < self.delay {
                std::thread::sleep(self.delay - elapsed);
            }
        }
        self.last_hit.insert(origin, Instant::now());
    }
}

impl PageSource for HttpSource {
    fn fetch(&mut self, url: &str) -> Result<String, FetchError> {
        self.wait_for(url);
        let err = |cause: String| FetchError {
            url: url.into(),
            cause,
        };
        let resp = self
            .client
            .get(url)
            .send()
            .map_err(|e| err(e.to_string()))?;
        let status = resp.status();
        if !status.is_success() {
            return Err(err(format!("HTTP {status}")));
        }
        resp.text().map_err(|e| err(e.to_string()))
    }

    fn is_network(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_names_are_sha256_hex() {
        // sha256("abc")
        assert_eq!(
            fixture_file_name("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad.html"
        );
    }

    #[test]
    fn missing_fixture_names_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let mut src = FixtureSource::new(dir.path());
        let err = src.fetch("https://m.test/list?page=9").unwrap_err();
        assert_eq!(err.url, "https://m.test/list?page=9");
        assert!(err
            .cause
            .contains(&fixture_file_name("https://m.test/list?page=9")));
    }

    #[test]
    fn reads_fixture_lossily() {
        let dir = tempfile::tempdir().unwrap();
        let url = "https://m.test/a";
        std::fs::write(dir.path().join(fixture_file_name(url)), b"<p>caf\xe9</p>").unwrap();
        let mut src = FixtureSource::new(dir.path());
        assert_eq!(src.fetch(url).unwrap(), "<p>caf\u{fffd}</p>");
        assert!(!src.is_network());
    }
}
