//! Identification of integer sequences against the OEIS search service.
//!
//! Lookups consult, in order, the local cache, the bundled fixtures and
//! (with the `network` feature, when not offline) the live service. Raw
//! responses are cached verbatim next to a parsed index, keyed by a hash of
//! the normalized query.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::sequences::Seq;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "PASCAL_INV_OEIS_CACHE";

pub const SEARCH_URL: &str = "https://oeis.org/search";

const FIXTURES: &[(&str, &str)] = &[
    ("lucas", include_str!("../fixtures/oeis/lucas.json")),
    ("fibonacci", include_str!("../fixtures/oeis/fibonacci.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Network,
    Cache,
    Fixture,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisMatch {
    pub id: String,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LookupResult {
    /// Query terms as decimal strings.
    pub query: Vec<String>,
    pub matches: Vec<OeisMatch>,
    pub source: Source,
}

#[derive(Deserialize)]
struct Entry {
    number: u64,
    #[serde(default)]
    name: String,
    #[serde(default)]
    data: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Response {
    Bare(Option<Vec<Entry>>),
    Wrapped { results: Option<Vec<Entry>> },
}

fn entries(raw: &[u8]) -> Result<Vec<Entry>> {
    let parsed: Response =
        serde_json::from_slice(raw).map_err(|e| Error::Parse(format!("OEIS response: {e}")))?;
    Ok(match parsed {
        Response::Bare(v) | Response::Wrapped { results: v } => v.unwrap_or_default(),
    })
}

fn to_match(e: &Entry) -> OeisMatch {
    OeisMatch { id: format!("A{:06}", e.number), name: e.name.clone() }
}

/// Parses either response shape of the JSON search endpoint: a bare array
/// of entries (or `null`), or an object with a `results` array.
pub fn parse_response(raw: &[u8]) -> Result<Vec<OeisMatch>> {
    Ok(entries(raw)?.iter().map(to_match).collect())
}

/// The first `depth` terms, which must all be integers.
pub fn integer_prefix(seq: &Seq, depth: usize) -> Result<Vec<BigInt>> {
    seq.prefix(depth)
        .into_iter()
        .enumerate()
        .map(|(index, x)| x.as_integer().ok_or(Error::NonIntegerSequence { index, value: x.to_string() }))
        .collect()
}

/// Comma-joined decimal terms, the form sent to the service.
pub fn normalize_query(terms: &[BigInt]) -> String {
    terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn cache_key(query: &str) -> String {
    format!("{:x}", Sha256::digest(query.as_bytes()))
}

#[derive(Serialize, Deserialize)]
struct CacheIndex {
    query: String,
    matches: Vec<OeisMatch>,
}

/// Default cache location: the environment variable, else the user cache
/// directory, else the system temporary directory.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .unwrap_or_else(std::env::temp_dir);
    base.join("pascal-invariants").join("oeis")
}

#[derive(Clone, Debug)]
pub struct OeisClient {
    cache_dir: PathBuf,
}

impl OeisClient {
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        Self { cache_dir: cache_dir.into() }
    }

    pub fn from_env() -> Self {
        Self::new(default_cache_dir())
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    fn paths(&self, query: &str) -> (PathBuf, PathBuf) {
        let key = cache_key(query);
        (self.cache_dir.join(format!("{key}.raw")), self.cache_dir.join(format!("{key}.json")))
    }

    fn write_atomic(&self, path: &Path, bytes: &[u8]) -> Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.cache_dir)?;
        tmp.write_all(bytes)?;
        tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }

    /// Stores a raw response for `query` and its parsed index.
    pub fn store(&self, query: &str, raw: &[u8]) -> Result<Vec<OeisMatch>> {
        let matches = parse_response(raw)?;
        fs::create_dir_all(&self.cache_dir)?;
        let (raw_path, index_path) = self.paths(query);
        self.write_atomic(&raw_path, raw)?;
        let index = CacheIndex { query: query.to_string(), matches: matches.clone() };
        let json = serde_json::to_vec_pretty(&index).map_err(|e| Error::Io(e.to_string()))?;
        self.write_atomic(&index_path, &json)?;
        Ok(matches)
    }

    /// The cached matches for `query`, if any.
    pub fn cached(&self, query: &str) -> Option<Vec<OeisMatch>> {
        let (_, index_path) = self.paths(query);
        let bytes = fs::read(index_path).ok()?;
        let index: CacheIndex = serde_json::from_slice(&bytes).ok()?;
        (index.query == query).then_some(index.matches)
    }

    pub fn lookup(&self, seq: &Seq, depth: usize, offline: bool) -> Result<LookupResult> {
        let terms = integer_prefix(seq, depth)?;
        self.lookup_terms(&terms, offline)
    }

    pub fn lookup_terms(&self, terms: &[BigInt], offline: bool) -> Result<LookupResult> {
        let query = normalize_query(terms);
        let result = |matches, source| LookupResult {
            query: terms.iter().map(ToString::to_string).collect(),
            matches,
            source,
        };
        if let Some(matches) = self.cached(&query) {
            return Ok(result(matches, Source::Cache));
        }
        if let Some(matches) = fixture_matches(&query) {
            return Ok(result(matches, Source::Fixture));
        }
        if offline {
            return Err(Error::CacheMiss(query));
        }
        let raw = fetch(&query)?;
        let matches = self.store(&query, &raw)?;
        Ok(result(matches, Source::Network))
    }
}

/// Bundled entries whose data begins with the query terms.
fn fixture_matches(query: &str) -> Option<Vec<OeisMatch>> {
    let found: Vec<OeisMatch> = FIXTURES
        .iter()
        .flat_map(|(_, raw)| entries(raw.as_bytes()).expect("bundled fixtures parse"))
        .filter(|e| {
            let data = e.data.replace(' ', "");
            data == query || data.starts_with(&format!("{query},"))
        })
        .map(|e| to_match(&e))
        .collect();
    (!found.is_empty()).then_some(found)
}

#[cfg(feature = "network")]
fn fetch(query: &str) -> Result<Vec<u8>> {
    use std::time::Duration;

    let client = reqwest::blocking::Client::builder()
        .timeout(Duration::from_secs(20))
        .build()
        .map_err(|e| Error::Network(e.to_string()))?;
    let mut last = String::new();
    for attempt in 0..3u32 {
        if attempt > 0 {
            std::thread::sleep(Duration::from_millis(500 * 2u64.pow(attempt)));
        }
        let resp = client.get(SEARCH_URL).query(&[("q", query), ("fmt", "json")]).send();
        match resp.and_then(|r| r.error_for_status()) {
            Ok(r) => return r.bytes().map(|b| b.to_vec()).map_err(|e| Error::Network(e.to_string())),
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::Network(last))
}

#[cfg(not(feature = "network"))]
fn fetch(query: &str) -> Result<Vec<u8>> {
    Err(Error::Network(format!("built without the `network` feature; no cached response for {query}")))
}
