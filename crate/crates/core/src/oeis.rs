//! OEIS b-files: parsing, rendering, fetching with an on-disk cache, and
//! offset-aware comparison against computed sequences.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use num_bigint::{BigInt, BigUint};

use crate::{Error, Result};

pub const DEFAULT_BASE_URL: &str = "https://oeis.org";

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "OEIS_CACHE_DIR";

/// An A-number such as `A000045`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OeisId(u32);

impl OeisId {
    pub fn number(&self) -> u32 {
        self.0
    }

    /// `https://oeis.org/A000045/b000045.txt` for the default base.
    pub fn bfile_url(&self, base: &str) -> String {
        format!("{}/A{:06}/b{:06}.txt", base.trim_end_matches('/'), self.0, self.0)
    }
}

impl FromStr for OeisId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.strip_prefix('A').ok_or_else(|| Error::MalformedId(s.to_string()))?;
        if digits.len() != 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::MalformedId(s.to_string()));
        }
        Ok(OeisId(digits.parse().expect("six ascii digits")))
    }
}

impl fmt::Display for OeisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{:06}", self.0)
    }
}

/// Terms at consecutive indices starting at `first_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OeisSequence {
    pub id: Option<OeisId>,
    pub first_index: i64,
    pub terms: Vec<BigInt>,
}

impl OeisSequence {
    pub fn new(first_index: i64, terms: Vec<BigInt>) -> Self {
        OeisSequence { id: None, first_index, terms }
    }

    /// Nonnegative counts starting at index 0.
    pub fn from_counts(counts: &[BigUint]) -> Self {
        OeisSequence::new(0, to_bigints(counts))
    }

    pub fn get(&self, index: i64) -> Option<&BigInt> {
        let i = index.checked_sub(self.first_index)?;
        usize::try_from(i).ok().and_then(|i| self.terms.get(i))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render_bfile(&self) -> String {
        let mut out = String::new();
        if let Some(id) = self.id {
            out.push_str(&format!("# {id}\n"));
        }
        for (i, t) in self.terms.iter().enumerate() {
            out.push_str(&format!("{} {}\n", self.first_index + i as i64, t));
        }
        out
    }
}

pub fn to_bigints(values: &[BigUint]) -> Vec<BigInt> {
    values.iter().cloned().map(BigInt::from).collect()
}

/// Parses b-file text: `index value` per line, `#` comments and blank lines
/// ignored, indices consecutive.
pub fn parse_bfile(text: &str) -> Result<OeisSequence> {
    let mut first_index = None;
    let mut terms = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |reason: &str| Error::MalformedLine { line: line_no, reason: reason.to_string() };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed("expected exactly two fields"));
        };
        let index: i64 = index.parse().map_err(|_| malformed("index is not an integer"))?;
        let value: BigInt = value.parse().map_err(|_| malformed("value is not an integer"))?;
        let start = *first_index.get_or_insert(index);
        let expected = start + terms.len() as i64;
        if index != expected {
            return Err(Error::NonConsecutiveIndex { line: line_no, expected, found: index });
        }
        terms.push(value);
    }
    let first_index = first_index.ok_or(Error::EmptyBFile)?;
    Ok(OeisSequence::new(first_index, terms))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Index into the computed sequence.
    pub n: usize,
    /// The reference term.
    pub expected: BigInt,
    /// The computed term.
    pub got: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    /// Agreeing positions before the first mismatch.
    pub matched: usize,
    pub first_mismatch: Option<Mismatch>,
    /// Computed term `n` is compared with reference index `n + alignment_offset`.
    pub alignment_offset: i64,
    /// Leading computed terms left out of the comparison.
    pub skipped: usize,
}

impl ComparisonReport {
    pub fn is_full_match(&self) -> bool {
        self.first_mismatch.is_none() && self.matched > 0
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "offset {:+}, skipped {}, matched {}", self.alignment_offset, self.skipped, self.matched)?;
        match &self.first_mismatch {
            None => write!(f, ", no mismatch"),
            Some(m) => write!(f, ", first mismatch at n = {}: expected {}, got {}", m.n, m.expected, m.got),
        }
    }
}

fn align(computed: &[BigInt], seq: &OeisSequence, offset: i64, skip: usize) -> ComparisonReport {
    let mut matched = 0;
    let mut first_mismatch = None;
    let last_index = seq.first_index + seq.terms.len() as i64 - 1;
    for (n, got) in computed.iter().enumerate().skip(skip) {
        let index = n as i64 + offset;
        if index > last_index {
            break;
        }
        let Some(expected) = seq.get(index) else { continue };
        if expected == got {
            matched += 1;
        } else {
            first_mismatch = Some(Mismatch { n, expected: expected.clone(), got: got.clone() });
            break;
        }
    }
    ComparisonReport { matched, first_mismatch, alignment_offset: offset, skipped: skip }
}

/// Finds the offset in `[-max_offset, max_offset]` with the longest agreeing
/// prefix.
pub fn compare(computed: &[BigInt], seq: &OeisSequence, max_offset: u32) -> ComparisonReport {
    compare_with_skip(computed, seq, max_offset, 0)
}

/// Like [`compare`], additionally allowing up to `max_skip` leading computed
/// terms to be ignored (conventional values at small `n` often differ).
///
/// Ties prefer full matches, then smaller `|offset|`, then fewer skipped terms.
pub fn compare_with_skip(computed: &[BigInt], seq: &OeisSequence, max_offset: u32, max_skip: usize) -> ComparisonReport {
    let m = max_offset as i64;
    let mut best: Option<ComparisonReport> = None;
    for skip in 0..=max_skip.min(computed.len().saturating_sub(1)) {
        for offset in (-m..=m).filter(|d| *d >= 0).chain((-m..0).rev()) {
            let r = align(computed, seq, offset, skip);
            let better = match &best {
                None => true,
                Some(b) => {
                    let key = |r: &ComparisonReport| (r.matched, r.first_mismatch.is_none());
                    key(&r) > key(b)
                        || (key(&r) == key(b) && (r.alignment_offset.abs(), r.skipped) < (b.alignment_offset.abs(), b.skipped))
                }
            };
            if better {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_else(|| align(computed, seq, 0, 0))
}

mod snapshots {
    macro_rules! snapshots {
        ($($id:literal),* $(,)?) => {
            pub const ALL: &[(&str, &str)] = &[
                $(($id, include_str!(concat!("../data/oeis/", $id, ".txt")))),*
            ];
        };
    }

    snapshots!(
        "A000032", "A000045", "A000051", "A000079", "A000225", "A001006", "A001333",
        "A001906", "A002203", "A005043", "A005248", "A007070", "A012814", "A025242",
        "A027941", "A035344", "A052542", "A056236", "A065034", "A099098", "A108368",
        "A124791", "A145839", "A176476", "A334293", "A377314",
    );
}

/// The b-file snapshot shipped with the crate, if any.
pub fn vendored_snapshot(id: &OeisId) -> Option<&'static str> {
    let key = id.to_string();
    snapshots::ALL.iter().find(|(k, _)| *k == key).map(|(_, text)| *text)
}

pub fn vendored_ids() -> Vec<OeisId> {
    snapshots::ALL.iter().map(|(k, _)| k.parse().expect("valid id")).collect()
}

/// `$OEIS_CACHE_DIR`, else `<platform cache>/evenup/oeis`.
pub fn default_cache_dir() -> Option<PathBuf> {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
        _ => dirs::cache_dir().map(|d| d.join("evenup").join("oeis")),
    }
}

/// Resolves b-files from the cache, the network (when allowed) and the
/// vendored snapshots, in that order.
#[derive(Clone, Debug)]
pub struct OeisClient {
    cache_dir: Option<PathBuf>,
    allow_network: bool,
    use_vendored: bool,
    base_url: String,
    timeout: Duration,
}

impl Default for OeisClient {
    fn default() -> Self {
        OeisClient {
            cache_dir: default_cache_dir(),
            allow_network: false,
            use_vendored: true,
            base_url: DEFAULT_BASE_URL.to_string(),
            timeout: Duration::from_secs(30),
        }
    }
}

impl OeisClient {
    /// Offline client using the default cache location and vendored snapshots.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cache_dir(mut self, dir: Option<PathBuf>) -> Self {
        self.cache_dir = dir;
        self
    }

    pub fn allow_network(mut self, allow: bool) -> Self {
        self.allow_network = allow;
        self
    }

    pub fn use_vendored(mut self, yes: bool) -> Self {
        self.use_vendored = yes;
        self
    }

    pub fn base_url(mut self, url: impl Into<String>) -> Self {
        self.base_url = url.into();
        self
    }

    pub fn timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    fn cache_path(&self, id: &OeisId) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("{id}.txt")))
    }

    /// Raw b-file text for `id`.
    pub fn fetch_text(&self, id: &OeisId) -> Result<String> {
        if let Some(path) = self.cache_path(id) {
            if let Ok(text) = fs::read_to_string(&path) {
                log::debug!("{id}: cache hit at {}", path.display());
                return Ok(text);
            }
        }
        if self.allow_network {
            let text = self.download(id)?;
            if let Some(path) = self.cache_path(id) {
                if let Err(e) = write_atomically(&path, text.as_bytes()) {
                    log::warn!("{id}: could not write cache: {e}");
                }
            }
            return Ok(text);
        }
        if self.use_vendored {
            if let Some(text) = vendored_snapshot(id) {
                log::debug!("{id}: using vendored snapshot");
                return Ok(text.to_string());
            }
        }
        Err(Error::Network {
            id: id.to_string(),
            reason: "network access is disabled and no cached or vendored copy exists".into(),
        })
    }

    pub fn fetch(&self, id: &OeisId) -> Result<OeisSequence> {
        let mut seq = parse_bfile(&self.fetch_text(id)?)?;
        seq.id = Some(*id);
        Ok(seq)
    }

    fn download(&self, id: &OeisId) -> Result<String> {
        let url = id.bfile_url(&self.base_url);
        log::info!("fetching {url}");
        let network = |reason: String| Error::Network { id: id.to_string(), reason };
        let response = ureq::get(&url)
            .timeout(self.timeout)
            .call()
            .map_err(|e| network(e.to_string()))?;
        response.into_string().map_err(|e| network(e.to_string()))
    }
}

/// Writes via a uniquely named temporary file and a rename, so concurrent
/// writers never expose a partial file.
fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir).map_err(io)?;
    let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos()).unwrap_or(0);
    let tmp = dir.join(format!(
        ".{}.{}.{:?}.{nanos}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("bfile"),
        std::process::id(),
        std::thread::current().id(),
    ));
    fs::write(&tmp, bytes).map_err(io)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ids() {
        let id: OeisId = "A000045".parse().unwrap();
        assert_eq!(id.to_string(), "A000045");
        assert_eq!(id.bfile_url(DEFAULT_BASE_URL), "https://oeis.org/A000045/b000045.txt");
        for bad in ["A00", "000045", "A0000450", "a000045", "A00004x", ""] {
            assert!(matches!(bad.parse::<OeisId>(), Err(Error::MalformedId(_))), "{bad}");
        }
    }

    #[test]
    fn parse_examples() {
        let s = parse_bfile("0 1\n1 3\n2 7\n").unwrap();
        assert_eq!((s.first_index, s.terms.clone()), (0, ints(&[1, 3, 7])));
        let s = parse_bfile("# comment\n1 1\n2 2\n").unwrap();
        assert_eq!((s.first_index, s.terms), (1, ints(&[1, 2])));
        let s = parse_bfile("\n  -2   5 \n-1 -6\n\n").unwrap();
        assert_eq!((s.first_index, s.terms), (-2, ints(&[5, -6])));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_bfile("0 1\n2 7\n"),
            Err(Error::NonConsecutiveIndex { line: 2, expected: 1, found: 2 })
        ));
        assert!(matches!(parse_bfile("0 1\n1\n"), Err(Error::MalformedLine { line: 2, .. })));
        assert!(matches!(parse_bfile("0 1 2\n"), Err(Error::MalformedLine { line: 1, .. })));
        assert!(matches!(parse_bfile("x 1\n"), Err(Error::MalformedLine { line: 1, .. })));
        assert!(matches!(parse_bfile("# only\n"), Err(Error::EmptyBFile)));
    }

    #[test]
    fn compare_finds_offsets() {
        let fib = OeisSequence::new(0, ints(&[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]));
        let odd_up_2 = ints(&[1, 2, 3, 5, 8, 13, 21]);
        let r = compare(&odd_up_2, &fib, 5);
        assert!(r.is_full_match());
        assert_eq!((r.alignment_offset, r.matched), (2, 7));

        let itself = compare(&odd_up_2, &OeisSequence::new(0, odd_up_2.clone()), 3);
        assert_eq!((itself.alignment_offset, itself.matched, itself.first_mismatch), (0, 7, None));

        let constant_two = ints(&[1, 2, 2, 2, 2, 2]);
        assert!(!compare(&constant_two, &fib, 5).is_full_match());
    }

    #[test]
    fn skip_handles_conventional_leading_terms() {
        // companion Pell vs cyclic even-up k = 3
        let pell = OeisSequence::new(0, ints(&[2, 2, 6, 14, 34, 82, 198, 478]));
        let computed = ints(&[1, 3, 6, 14, 34, 82, 198, 478]);
        assert!(!compare(&computed, &pell, 3).is_full_match());
        let r = compare_with_skip(&computed, &pell, 3, 2);
        assert!(r.is_full_match());
        assert_eq!((r.alignment_offset, r.skipped, r.matched), (0, 2, 6));
    }

    #[test]
    fn mismatch_is_reported() {
        let seq = OeisSequence::new(0, ints(&[1, 2, 3, 4]));
        let r = compare(&ints(&[1, 2, 9, 4]), &seq, 0);
        assert_eq!(r.matched, 2);
        assert_eq!(r.first_mismatch, Some(Mismatch { n: 2, expected: BigInt::from(3), got: BigInt::from(9) }));
    }

    #[test]
    fn vendored_snapshots_parse() {
        let ids = vendored_ids();
        assert_eq!(ids.len(), 26);
        for id in ids {
            let seq = parse_bfile(vendored_snapshot(&id).unwrap()).unwrap();
            assert!(seq.len() >= 11, "{id}");
        }
    }

    #[test]
    fn cache_hit_without_network() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("A999999.txt"), "0 4\n1 5\n").unwrap();
        let client = OeisClient::new().cache_dir(Some(dir.path().to_path_buf())).use_vendored(false);
        let seq = client.fetch(&"A999999".parse().unwrap()).unwrap();
        assert_eq!(seq.terms, ints(&[4, 5]));
        assert_eq!(seq.id.unwrap().to_string(), "A999999");
    }

    #[test]
    fn offline_miss_is_a_network_error() {
        let dir = tempfile::tempdir().unwrap();
        let client = OeisClient::new().cache_dir(Some(dir.path().to_path_buf()));
        assert!(matches!(client.fetch(&"A999998".parse().unwrap()), Err(Error::Network { .. })));
        let no_vendored = client.clone().use_vendored(false);
        assert!(matches!(no_vendored.fetch(&"A000045".parse().unwrap()), Err(Error::Network { .. })));
        assert!(client.fetch(&"A000045".parse().unwrap()).is_ok());
    }

    #[test]
    fn unreachable_server_is_a_network_error_not_a_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let client = OeisClient::new()
            .cache_dir(Some(dir.path().to_path_buf()))
            .allow_network(true)
            .base_url("http://127.0.0.1:9")
            .timeout(Duration::from_secs(2));
        assert!(matches!(client.fetch(&"A000045".parse().unwrap()), Err(Error::Network { .. })));
        assert!(!dir.path().join("A000045.txt").exists());
    }

    #[test]
    fn downloads_are_cached() {
        use std::io::{Read, Write};
        use std::net::TcpListener;

        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let port = listener.local_addr().unwrap().port();
        let server = std::thread::spawn(move || {
            let (mut stream, _) = listener.accept().unwrap();
            let mut buf = [0u8; 1024];
            let n = stream.read(&mut buf).unwrap();
            let request = String::from_utf8_lossy(&buf[..n]).to_string();
            let body = "0 0\n1 1\n2 1\n3 2\n";
            write!(stream, "HTTP/1.1 200 OK\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}", body.len()).unwrap();
            request
        });
        let dir = tempfile::tempdir().unwrap();
        let client = OeisClient::new()
            .cache_dir(Some(dir.path().to_path_buf()))
            .allow_network(true)
            .base_url(format!("http://127.0.0.1:{port}"));
        let id: OeisId = "A000045".parse().unwrap();
        let seq = client.fetch(&id).unwrap();
        assert_eq!(seq.terms, ints(&[0, 1, 1, 2]));
        let request = server.join().unwrap();
        assert!(request.starts_with("GET /A000045/b000045.txt"));
        assert_eq!(fs::read_to_string(dir.path().join("A000045.txt")).unwrap(), "0 0\n1 1\n2 1\n3 2\n");
        // second fetch is served from cache; the server is gone
        assert_eq!(client.fetch(&id).unwrap().terms, ints(&[0, 1, 1, 2]));
    }

    #[test]
    fn concurrent_cache_writes() {
        let dir = tempfile::tempdir().unwrap();
        std::thread::scope(|s| {
            for i in 0..8 {
                let path = dir.path().join(format!("A00000{}.txt", i % 4));
                s.spawn(move || write_atomically(&path, b"0 1\n1 2\n").unwrap());
            }
        });
        for i in 0..4 {
            let text = fs::read_to_string(dir.path().join(format!("A00000{i}.txt"))).unwrap();
            assert_eq!(text, "0 1\n1 2\n");
        }
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(first in -5i64..5, terms in proptest::collection::vec(any::<i64>(), 1..40)) {
            let seq = OeisSequence::new(first, ints(&terms));
            prop_assert_eq!(parse_bfile(&seq.render_bfile()).unwrap(), seq);
        }

        #[test]
        fn compare_is_symmetric(
            terms in proptest::collection::vec(0i64..4, 3..20),
            cut in 0usize..3,
        ) {
            let a = ints(&terms);
            let b: Vec<BigInt> = a[cut..].to_vec();
            let forward = compare(&a, &OeisSequence::new(0, b.clone()), 3);
            if forward.is_full_match() {
                let backward = compare(&b, &OeisSequence::new(0, a.clone()), 3);
                // the reverse alignment is also a full match
                let reverse = align(&b, &OeisSequence::new(0, a), -forward.alignment_offset, 0);
                prop_assert!(reverse.is_full_match());
                prop_assert!(backward.matched >= reverse.matched);
            }
        }
    }
}
