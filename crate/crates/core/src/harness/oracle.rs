//! Line-protocol client for an external computer-algebra process.
//!
//! The oracle reads one request per line on stdin (`CLASSGROUP5 n`, `HGAMMA n`,
//! `UINDEX n`) and answers each with one line, `OK <payload>` or `ERR <message>`.
//! One process is kept alive per client and requests are serialized through it.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Environment variable naming the response cache file.
pub const CACHE_ENV: &str = "QUINTESSA_ORACLE_CACHE";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(600);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RequestKind {
    #[serde(rename = "CLASSGROUP5")]
    ClassGroup5,
    #[serde(rename = "HGAMMA")]
    HGamma,
    #[serde(rename = "UINDEX")]
    UIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OracleRequest {
    pub kind: RequestKind,
    pub n: u64,
}

impl OracleRequest {
    pub fn class_group5(n: u64) -> Self {
        OracleRequest {
            kind: RequestKind::ClassGroup5,
            n,
        }
    }
    pub fn h_gamma(n: u64) -> Self {
        OracleRequest {
            kind: RequestKind::HGamma,
            n,
        }
    }
    pub fn u_index(n: u64) -> Self {
        OracleRequest {
            kind: RequestKind::UIndex,
            n,
        }
    }

    /// Cache key: hex SHA-256 of the request line.
    pub fn cache_key(&self) -> String {
        hex::encode(Sha256::digest(self.to_string().as_bytes()))
    }
}

impl RequestKind {
    pub fn name(self) -> &'static str {
        match self {
            RequestKind::ClassGroup5 => "CLASSGROUP5",
            RequestKind::HGamma => "HGAMMA",
            RequestKind::UIndex => "UINDEX",
        }
    }
}

impl fmt::Display for OracleRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.name(), self.n)
    }
}

/// A well-formed oracle answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OracleAnswer {
    /// Elementary divisors of the 5-part of the class group.
    ClassGroup {
        divisors: Vec<u64>,
    },
    Integer {
        value: u64,
    },
    /// The oracle replied `ERR`.
    Refused {
        message: String,
    },
}

/// Result of a query; `Unavailable` maps to a SKIP, never to a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleOutcome {
    Answer(OracleAnswer),
    Unavailable(String),
}

/// Parse one response line for `req`. Anything other than a well-formed
/// `OK`/`ERR` line is a protocol error carrying the raw text.
pub fn parse_response(req: &OracleRequest, line: &str) -> Result<OracleAnswer> {
    let raw = line.trim_end_matches(['\r', '\n']);
    let bad = |message: &str| Error::OracleProtocol {
        message: format!("{message} in reply to `{req}`"),
        raw: raw.to_string(),
    };
    let (tag, rest) = match raw.split_once(' ') {
        Some((t, r)) => (t, r.trim()),
        None => (raw, ""),
    };
    match tag {
        "ERR" => Ok(OracleAnswer::Refused {
            message: rest.to_string(),
        }),
        "OK" => {
            let nums: Vec<u64> = rest
                .split_whitespace()
                .map(|t| t.parse::<u64>().ok().filter(|&v| v > 0))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("payload is not a list of positive integers"))?;
            match req.kind {
                RequestKind::ClassGroup5 => {
                    if nums.iter().any(|&d| d < 5 || !is_power_of_five(d)) {
                        return Err(bad("5-part divisors must be powers of 5"));
                    }
                    Ok(OracleAnswer::ClassGroup { divisors: nums })
                }
                RequestKind::HGamma | RequestKind::UIndex => match nums.as_slice() {
                    [v] => Ok(OracleAnswer::Integer { value: *v }),
                    _ => Err(bad("expected exactly one integer")),
                },
            }
        }
        _ => Err(bad("response must start with OK or ERR")),
    }
}

fn is_power_of_five(mut d: u64) -> bool {
    while d % 5 == 0 {
        d /= 5;
    }
    d == 1
}

/// Persistent map `sha256(request) → response line`, one `key\tline` record per line.
#[derive(Debug, Default)]
pub struct ResponseCache {
    path: Option<PathBuf>,
    entries: HashMap<String, String>,
}

impl ResponseCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let entries = read_cache_file(&path)?;
        Ok(ResponseCache {
            path: Some(path),
            entries,
        })
    }

    /// Cache at `$QUINTESSA_ORACLE_CACHE` if set, otherwise in memory only.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CACHE_ENV) {
            Some(p) if !p.is_empty() => Self::open(PathBuf::from(p)),
            _ => Ok(Self::in_memory()),
        }
    }

    pub fn get(&self, req: &OracleRequest) -> Option<&str> {
        self.entries.get(&req.cache_key()).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Record a response and persist the whole cache by write-then-rename.
    /// Records written meanwhile by other processes are merged, never dropped.
    pub fn insert(&mut self, req: &OracleRequest, line: &str) -> Result<()> {
        let key = req.cache_key();
        self.entries.insert(key, line.to_string());
        let Some(path) = &self.path else {
            return Ok(());
        };
        for (k, v) in read_cache_file(path)? {
            self.entries.entry(k).or_insert(v);
        }
        let mut keys: Vec<&String> = self.entries.keys().collect();
        keys.sort();
        let mut body = String::new();
        for k in keys {
            body.push_str(k);
            body.push('\t');
            body.push_str(&self.entries[k]);
            body.push('\n');
        }
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        fs::write(&tmp, body)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn read_cache_file(path: &Path) -> Result<HashMap<String, String>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(HashMap::new()),
        Err(e) => return Err(e.into()),
    };
    Ok(text
        .lines()
        .filter_map(|l| l.split_once('\t'))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect())
}

struct Running {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<String>,
}

impl Drop for Running {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

/// Client for one oracle command line, run through `sh -c`.
pub struct OracleClient {
    command: String,
    timeout: Duration,
    cache: ResponseCache,
    process: Option<Running>,
    /// Requests actually sent to the process (cache hits excluded).
    sent: usize,
}

impl OracleClient {
    pub fn new(command: impl Into<String>, cache: ResponseCache) -> Self {
        OracleClient {
            command: command.into(),
            timeout: DEFAULT_TIMEOUT,
            cache,
            process: None,
            sent: 0,
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn requests_sent(&self) -> usize {
        self.sent
    }

    pub fn cache(&self) -> &ResponseCache {
        &self.cache
    }

    fn spawn(&self) -> std::io::Result<Running> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(&self.command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                match line {
                    Ok(l) => {
                        if tx.send(l).is_err() {
                            break;
                        }
                    }
                    Err(_) => break,
                }
            }
        });
        Ok(Running {
            child,
            stdin,
            lines: rx,
        })
    }

    /// Send `req` (or answer it from the cache). A missing, dead or slow oracle
    /// yields `Unavailable`; a malformed reply is an `OracleProtocol` error.
    pub fn query(&mut self, req: &OracleRequest) -> Result<OracleOutcome> {
        if let Some(line) = self.cache.get(req) {
            return parse_response(req, line).map(OracleOutcome::Answer);
        }
        if self.process.is_none() {
            match self.spawn() {
                Ok(p) => self.process = Some(p),
                Err(e) => {
                    return Ok(OracleOutcome::Unavailable(format!(
                        "cannot start oracle: {e}"
                    )))
                }
            }
        }
        let proc = self.process.as_mut().unwrap();
        self.sent += 1;
        if writeln!(proc.stdin, "{req}")
            .and_then(|_| proc.stdin.flush())
            .is_err()
        {
            self.process = None;
            return Ok(OracleOutcome::Unavailable("oracle closed its input".into()));
        }
        let line = match proc.lines.recv_timeout(self.timeout) {
            Ok(l) => l,
            Err(RecvTimeoutError::Timeout) => {
                self.process = None;
                return Ok(OracleOutcome::Unavailable(format!(
                    "no reply to `{req}` within {} s",
                    self.timeout.as_secs_f64()
                )));
            }
            Err(RecvTimeoutError::Disconnected) => {
                self.process = None;
                return Ok(OracleOutcome::Unavailable(
                    "oracle exited without replying".into(),
                ));
            }
        };
        let answer = parse_response(req, &line)?;
        if !matches!(answer, OracleAnswer::Refused { .. }) {
            self.cache.insert(req, line.trim_end())?;
        }
        Ok(OracleOutcome::Answer(answer))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_lines() {
        assert_eq!(
            OracleRequest::class_group5(95).to_string(),
            "CLASSGROUP5 95"
        );
        assert_eq!(OracleRequest::u_index(57).to_string(), "UINDEX 57");
        assert_ne!(
            OracleRequest::h_gamma(95).cache_key(),
            OracleRequest::u_index(95).cache_key()
        );
    }

    #[test]
    fn response_parsing() {
        let r = OracleRequest::class_group5(95);
        assert_eq!(
            parse_response(&r, "OK 5 5").unwrap(),
            OracleAnswer::ClassGroup {
                divisors: vec![5, 5]
            }
        );
        assert_eq!(
            parse_response(&r, "OK").unwrap(),
            OracleAnswer::ClassGroup { divisors: vec![] }
        );
        assert!(matches!(
            parse_response(&r, "ERR boom").unwrap(),
            OracleAnswer::Refused { .. }
        ));
        assert!(matches!(
            parse_response(&r, "OK 6"),
            Err(Error::OracleProtocol { .. })
        ));
        let h = OracleRequest::h_gamma(95);
        assert_eq!(
            parse_response(&h, "OK 10").unwrap(),
            OracleAnswer::Integer { value: 10 }
        );
        match parse_response(&h, "hello") {
            Err(Error::OracleProtocol { raw, .. }) => assert_eq!(raw, "hello"),
            other => panic!("{other:?}"),
        }
        assert!(parse_response(&h, "OK 1 2").is_err());
    }
}
