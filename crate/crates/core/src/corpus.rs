//! Reuters-21578 SGML ingestion, the LEWISSPLIT partition, and collection
//! statistics.
//!
//! The scanner is lenient: it looks for `<REUTERS ...>` elements and pulls
//! out the handful of children it needs, ignoring everything else. The real
//! distribution has malformed regions that a validating parser would reject.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Name of the category list shipped with the Reuters distribution.
pub const TOPICS_LIST_FILE: &str = "all-topics-strings.lc.txt";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LewisSplit {
    Train,
    Test,
    NotUsed,
    /// Any other attribute value, kept verbatim. Treated like `NotUsed`.
    Other(String),
}

impl LewisSplit {
    pub fn parse(value: &str) -> Self {
        match value {
            "TRAIN" => LewisSplit::Train,
            "TEST" => LewisSplit::Test,
            "NOT-USED" => LewisSplit::NotUsed,
            other => LewisSplit::Other(other.to_string()),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            LewisSplit::Train => "TRAIN",
            LewisSplit::Test => "TEST",
            LewisSplit::NotUsed => "NOT-USED",
            LewisSplit::Other(s) => s,
        }
    }
}

impl fmt::Display for LewisSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One news story.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDocument {
    pub new_id: u32,
    pub old_id: Option<u32>,
    pub lewis_split: LewisSplit,
    /// TOPICS labels, lowercase, in source order without repeats.
    pub topics: Vec<String>,
    pub title: String,
    pub body: String,
    pub date: String,
}

impl RawDocument {
    pub fn has_topic(&self, label: &str) -> bool {
        self.topics.iter().any(|t| t == label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnclosedReuters,
    MissingNewId,
    BadId(String),
    UnterminatedTag,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnclosedReuters => f.write_str("unclosed <REUTERS> element"),
            ParseErrorKind::MissingNewId => f.write_str("<REUTERS> element without NEWID"),
            ParseErrorKind::BadId(v) => write!(f, "invalid document id {v:?}"),
            ParseErrorKind::UnterminatedTag => f.write_str("unterminated tag"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{kind} at byte {offset} ({parsed} documents parsed before it)")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub parsed: usize,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("no .sgm files in {0}")]
    Empty(PathBuf),
    #[error("duplicate NEWID {0}")]
    DuplicateId(u32),
}

fn find(hay: &[u8], needle: &[u8], from: usize) -> Option<usize> {
    if from > hay.len() {
        return None;
    }
    hay[from..]
        .windows(needle.len())
        .position(|w| w == needle)
        .map(|p| p + from)
}

/// Position of the next `<NAME` that is followed by `>` or whitespace.
fn find_open(hay: &[u8], name: &[u8], mut from: usize) -> Option<usize> {
    let mut pat = Vec::with_capacity(name.len() + 1);
    pat.push(b'<');
    pat.extend_from_slice(name);
    while let Some(p) = find(hay, &pat, from) {
        match hay.get(p + pat.len()) {
            Some(b'>') | Some(b' ') | Some(b'\t') | Some(b'\r') | Some(b'\n') => return Some(p),
            _ => from = p + 1,
        }
    }
    None
}

/// Contents between `<NAME ...>` and `</NAME>`, searching from `from`.
fn element<'a>(hay: &'a [u8], name: &[u8], from: usize) -> Option<(&'a [u8], usize)> {
    let open = find_open(hay, name, from)?;
    let start = find(hay, b">", open)? + 1;
    let mut close = Vec::with_capacity(name.len() + 3);
    close.extend_from_slice(b"</");
    close.extend_from_slice(name);
    close.push(b'>');
    let end = find(hay, &close, start)?;
    Some((&hay[start..end], end + close.len()))
}

fn attributes(tag: &[u8]) -> Vec<(String, String)> {
    let text = String::from_utf8_lossy(tag);
    let mut out = Vec::new();
    let mut rest = text.as_ref();
    while let Some(eq) = rest.find("=\"") {
        let name = rest[..eq]
            .rsplit(|c: char| c.is_whitespace())
            .next()
            .unwrap_or("")
            .to_string();
        let after = &rest[eq + 2..];
        let Some(q) = after.find('"') else { break };
        out.push((name, after[..q].to_string()));
        rest = &after[q + 1..];
    }
    out
}

static UNKNOWN_ENTITY_SEEN: AtomicBool = AtomicBool::new(false);

/// Decodes `&amp; &lt; &gt; &quot;`; any other entity is kept as written.
pub fn decode_entities(text: &str) -> String {
    if !text.contains('&') {
        return text.to_string();
    }
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(p) = rest.find('&') {
        out.push_str(&rest[..p]);
        rest = &rest[p..];
        let known = [("&amp;", '&'), ("&lt;", '<'), ("&gt;", '>'), ("&quot;", '"')]
            .into_iter()
            .find(|(e, _)| rest.starts_with(e));
        match known {
            Some((e, c)) => {
                out.push(c);
                rest = &rest[e.len()..];
            }
            None => {
                if rest.find(';').is_some_and(|semi| semi < 10) && !UNKNOWN_ENTITY_SEEN.swap(true, Ordering::Relaxed) {
                    log::warn!(
                        "unrecognized SGML entity near {:?}; kept literally",
                        &rest[..rest.len().min(10)]
                    );
                }
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

fn encode_entities(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

/// Removes markup, keeping the text between tags.
fn strip_tags(text: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(text.len());
    let mut in_tag = false;
    for &b in text {
        match b {
            b'<' => in_tag = true,
            b'>' if in_tag => in_tag = false,
            _ if !in_tag => out.push(b),
            _ => {}
        }
    }
    out
}

fn field_text(raw: &[u8]) -> String {
    decode_entities(&String::from_utf8_lossy(&strip_tags(raw)))
}

fn parse_id(value: &str, offset: usize, parsed: usize) -> Result<u32, ParseError> {
    value.trim().parse().map_err(|_| ParseError {
        kind: ParseErrorKind::BadId(value.to_string()),
        offset,
        parsed,
    })
}

/// Parse every `<REUTERS>` element in `input`, in file order.
pub fn parse_sgml(input: &[u8]) -> Result<Vec<RawDocument>, ParseError> {
    let mut docs = Vec::new();
    let mut pos = 0;
    while let Some(open) = find_open(input, b"REUTERS", pos) {
        let err = |kind, offset| ParseError {
            kind,
            offset,
            parsed: docs.len(),
        };
        let tag_end = find(input, b">", open).ok_or_else(|| err(ParseErrorKind::UnterminatedTag, open))?;
        let close = find(input, b"</REUTERS>", tag_end).ok_or_else(|| err(ParseErrorKind::UnclosedReuters, open))?;
        if let Some(next) = find_open(input, b"REUTERS", tag_end) {
            if next < close {
                return Err(err(ParseErrorKind::UnclosedReuters, open));
            }
        }

        let mut new_id = None;
        let mut old_id = None;
        let mut split = LewisSplit::Other(String::new());
        for (name, value) in attributes(&input[open + "<REUTERS".len()..tag_end]) {
            match name.as_str() {
                "NEWID" => new_id = Some(parse_id(&value, open, docs.len())?),
                "OLDID" => old_id = Some(parse_id(&value, open, docs.len())?),
                "LEWISSPLIT" => split = LewisSplit::parse(&value),
                _ => {}
            }
        }
        let new_id = new_id.ok_or_else(|| err(ParseErrorKind::MissingNewId, open))?;

        let content = &input[tag_end + 1..close];
        let mut topics: Vec<String> = Vec::new();
        if let Some((t, _)) = element(content, b"TOPICS", 0) {
            let mut p = 0;
            while let Some((label, next)) = element(t, b"D", p) {
                let label = field_text(label).trim().to_lowercase();
                if !label.is_empty() && !topics.contains(&label) {
                    topics.push(label);
                }
                p = next;
            }
        }
        let date = element(content, b"DATE", 0)
            .map(|(d, _)| field_text(d))
            .unwrap_or_default();
        let text = element(content, b"TEXT", 0).map(|(t, _)| t).unwrap_or(&[]);
        let title = element(text, b"TITLE", 0)
            .map(|(t, _)| field_text(t))
            .unwrap_or_default();
        let body = element(text, b"BODY", 0)
            .map(|(b, _)| field_text(b))
            .unwrap_or_default();

        docs.push(RawDocument {
            new_id,
            old_id,
            lewis_split: split,
            topics,
            title,
            body,
            date,
        });
        pos = close + "</REUTERS>".len();
    }
    Ok(docs)
}

/// Writes documents back as SGML that [`parse_sgml`] reads to the same
/// values.
pub fn to_sgml(docs: &[RawDocument]) -> String {
    let mut out = String::new();
    for d in docs {
        out.push_str(&format!(
            "<REUTERS TOPICS=\"{}\" LEWISSPLIT=\"{}\"",
            if d.topics.is_empty() { "NO" } else { "YES" },
            d.lewis_split
        ));
        if let Some(old) = d.old_id {
            out.push_str(&format!(" OLDID=\"{old}\""));
        }
        out.push_str(&format!(" NEWID=\"{}\">\n", d.new_id));
        out.push_str(&format!("<DATE>{}</DATE>\n<TOPICS>", encode_entities(&d.date)));
        for t in &d.topics {
            out.push_str(&format!("<D>{}</D>", encode_entities(t)));
        }
        out.push_str("</TOPICS>\n<TEXT>\n");
        out.push_str(&format!("<TITLE>{}</TITLE>\n", encode_entities(&d.title)));
        out.push_str(&format!("<BODY>{}</BODY>\n", encode_entities(&d.body)));
        out.push_str("</TEXT>\n</REUTERS>\n");
    }
    out
}

/// Parses every `*.sgm` file in `dir`, in file-name order.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<RawDocument>, CorpusError> {
    let io_err = |path: &Path, source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "sgm"))
        .collect();
    if files.is_empty() {
        return Err(CorpusError::Empty(dir.to_path_buf()));
    }
    files.sort();
    let parsed: Vec<Vec<RawDocument>> = files
        .par_iter()
        .map(|path| {
            let bytes = std::fs::read(path).map_err(|e| io_err(path, e))?;
            parse_sgml(&bytes).map_err(|source| CorpusError::Parse {
                path: path.clone(),
                source,
            })
        })
        .collect::<Result<_, _>>()?;
    let docs: Vec<RawDocument> = parsed.into_iter().flatten().collect();
    let mut seen = HashSet::with_capacity(docs.len());
    for d in &docs {
        if !seen.insert(d.new_id) {
            return Err(CorpusError::DuplicateId(d.new_id));
        }
    }
    Ok(docs)
}

/// The category list from `all-topics-strings.lc.txt` when the corpus
/// directory has one.
pub fn load_topic_list(dir: &Path) -> Result<Option<Vec<String>>, CorpusError> {
    let path = dir.join(TOPICS_LIST_FILE);
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path).map_err(|source| CorpusError::Io {
        path: path.clone(),
        source,
    })?;
    let mut topics: Vec<String> = text
        .lines()
        .map(|l| l.trim().to_lowercase())
        .filter(|l| !l.is_empty())
        .collect();
    topics.sort();
    topics.dedup();
    Ok(Some(topics))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusSplit {
    pub training: Vec<RawDocument>,
    pub test: Vec<RawDocument>,
    /// Documents tagged NOT-USED or with an unrecognized tag.
    pub discarded: usize,
    /// Of the discarded, those whose tag was not one of the three known values.
    pub unknown_split: usize,
}

pub fn split_lewis(docs: Vec<RawDocument>) -> CorpusSplit {
    let mut split = CorpusSplit::default();
    for d in docs {
        match d.lewis_split {
            LewisSplit::Train => split.training.push(d),
            LewisSplit::Test => split.test.push(d),
            LewisSplit::NotUsed => split.discarded += 1,
            LewisSplit::Other(_) => {
                split.discarded += 1;
                split.unknown_split += 1;
            }
        }
    }
    split
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SubsetStats {
    pub doc_count: u64,
    pub word_occurrences: u64,
    pub avg_words_per_doc: f64,
    pub docs_with_topics: u64,
    pub pct_with_topics: f64,
    pub topic_occurrences: u64,
    pub avg_topics_per_doc: f64,
}

impl SubsetStats {
    fn from_counts(doc_count: u64, word_occurrences: u64, docs_with_topics: u64, topic_occurrences: u64) -> Self {
        let per_doc = |x: u64| {
            if doc_count == 0 {
                0.0
            } else {
                x as f64 / doc_count as f64
            }
        };
        SubsetStats {
            doc_count,
            word_occurrences,
            avg_words_per_doc: per_doc(word_occurrences),
            docs_with_topics,
            pct_with_topics: 100.0 * per_doc(docs_with_topics),
            topic_occurrences,
            avg_topics_per_doc: per_doc(topic_occurrences),
        }
    }

    fn of(docs: &[RawDocument], tokenizer: &(dyn Fn(&str) -> Vec<String> + Sync)) -> Self {
        let words: u64 = docs
            .par_iter()
            .map(|d| (tokenizer(&d.title).len() + tokenizer(&d.body).len()) as u64)
            .sum();
        Self::from_counts(
            docs.len() as u64,
            words,
            docs.iter().filter(|d| !d.topics.is_empty()).count() as u64,
            docs.iter().map(|d| d.topics.len() as u64).sum(),
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub training: SubsetStats,
    pub test: SubsetStats,
    pub total: SubsetStats,
}

/// Word occurrences are counted with `tokenizer` over title and body, before
/// any stopword removal or stemming.
pub fn compute_stats(split: &CorpusSplit, tokenizer: &(dyn Fn(&str) -> Vec<String> + Sync)) -> CorpusStats {
    let training = SubsetStats::of(&split.training, tokenizer);
    let test = SubsetStats::of(&split.test, tokenizer);
    let total = SubsetStats::from_counts(
        training.doc_count + test.doc_count,
        training.word_occurrences + test.word_occurrences,
        training.docs_with_topics + test.docs_with_topics,
        training.topic_occurrences + test.topic_occurrences,
    );
    CorpusStats { training, test, total }
}

/// `1820881` -> `1,820,881`.
pub fn thousands(n: u64) -> String {
    let digits = n.to_string();
    let mut out = String::new();
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

impl CorpusStats {
    /// Aligned text table with the same rows as the published statistics.
    pub fn to_table(&self) -> String {
        let cols = [&self.training, &self.test, &self.total];
        let row = |group: &str, label: &str, f: &dyn Fn(&SubsetStats) -> String| {
            let mut line = format!("{group:<21}{label:<13}");
            for c in cols {
                line.push_str(&format!("{:>12}", f(c)));
            }
            line.push('\n');
            line
        };
        let mut out = format!("{:<34}{:>12}{:>12}{:>12}\n", "", "Training", "Test", "Total");
        out.push_str(&row("Docs.", "Number", &|s| thousands(s.doc_count)));
        out.push_str(&row("Words", "Occurrences", &|s| thousands(s.word_occurrences)));
        out.push_str(&row("", "Doc. average", &|s| format!("{:.0}", s.avg_words_per_doc)));
        out.push_str(&row("Docs. with 1+ Topics", "Number", &|s| {
            thousands(s.docs_with_topics)
        }));
        out.push_str(&row("", "Percentage", &|s| format!("{:.0}", s.pct_with_topics)));
        out.push_str(&row("Topics", "Occurrences", &|s| thousands(s.topic_occurrences)));
        out.push_str(&row("", "Doc. average", &|s| format!("{:.2}", s.avg_topics_per_doc)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textpipe::tokenize;

    const FIG1: &str = r#"<!DOCTYPE lewis SYSTEM "lewis.dtd">
<REUTERS TOPICS="YES" LEWISSPLIT="TEST" CGISPLIT="TRAINING-SET" OLDID="6505" NEWID="18753">
<DATE>18-JUN-1987 11:44:27.20</DATE>
<TOPICS><D>bop</D><D>trade</D></TOPICS>
<PLACES><D>italy</D></PLACES>
<PEOPLE></PEOPLE>
<ORGS></ORGS>
<EXCHANGES></EXCHANGES>
<COMPANIES></COMPANIES>
<UNKNOWN>
&#5;&#5;&#5;RM
&#22;&#22;&#1;f2747&#31;reute
u f BC-ITALIAN-BALANCE-OF-PA   06-18 0091</UNKNOWN>
<TEXT>&#2;
<TITLE>ITALIAN BALANCE OF PAYMENTS IN DEFICIT IN MAY</TITLE>
<DATELINE>    ROME, June 18 - </DATELINE><BODY>Italy's overall balance of payments showed a deficit of 3,211 billion
lire in May compared with a surplus of 2,040 billion in April,
provisional Bank of Italy figures show.
    The May deficit compares with a surplus of 1,555 billion lire in the
corresponding month of 1986.
    For the first five months of 1987, the overall balance of payments
showed a surplus of 299 billion lire against a deficit of 2,854
billion in the corresponding 1986 period.
 REUTER
&#3;</BODY></TEXT>
</REUTERS>
"#;

    #[test]
    fn parses_figure_one_document() {
        let docs = parse_sgml(FIG1.as_bytes()).unwrap();
        assert_eq!(docs.len(), 1);
        let d = &docs[0];
        assert_eq!(d.new_id, 18753);
        assert_eq!(d.old_id, Some(6505));
        assert_eq!(d.lewis_split, LewisSplit::Test);
        assert_eq!(d.topics, vec!["bop", "trade"]);
        assert!(d.title.starts_with("ITALIAN BALANCE OF PAYMENTS"));
        assert!(d.body.starts_with("Italy's overall balance"));
        assert!(!d.body.contains("ROME"));
        assert_eq!(d.date, "18-JUN-1987 11:44:27.20");
    }

    #[test]
    fn empty_stream() {
        assert!(parse_sgml(b"").unwrap().is_empty());
    }

    #[test]
    fn two_documents_with_entity() {
        let src = r#"<REUTERS LEWISSPLIT="TRAIN" NEWID="1"><TOPICS><D>acq</D></TOPICS>
<TEXT><TITLE>A &lt;B&gt; C</TITLE><BODY>Smith &amp; Co said &quot;yes&quot;</BODY></TEXT></REUTERS>
<REUTERS LEWISSPLIT="TEST" NEWID="2"><TOPICS></TOPICS><TEXT><BODY>plain</BODY></TEXT></REUTERS>"#;
        let docs = parse_sgml(src.as_bytes()).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].body, "Smith & Co said \"yes\"");
        assert_eq!(docs[0].title, "A <B> C");
        assert!(docs[1].topics.is_empty());
        assert!(docs[1].title.is_empty());
    }

    #[test]
    fn unknown_entities_pass_through() {
        assert_eq!(decode_entities("a &#3; b &amp; c"), "a &#3; b & c");
        assert_eq!(decode_entities("AT&T"), "AT&T");
    }

    #[test]
    fn missing_newid_is_an_error() {
        let src = br#"<REUTERS LEWISSPLIT="TRAIN" NEWID="1"></REUTERS>
<REUTERS LEWISSPLIT="TRAIN"><TEXT></TEXT></REUTERS>"#;
        let err = parse_sgml(src).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingNewId);
        assert_eq!(err.parsed, 1);
        assert_eq!(err.offset, src.iter().position(|&b| b == b'\n').unwrap() + 1);
    }

    #[test]
    fn unclosed_element_is_an_error() {
        let src = br#"<REUTERS NEWID="1"><TEXT>x</TEXT>
<REUTERS NEWID="2"></REUTERS>"#;
        let err = parse_sgml(src).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnclosedReuters);
        assert_eq!((err.offset, err.parsed), (0, 0));

        let err = parse_sgml(br#"<REUTERS NEWID="1"><TEXT>x</TEXT>"#).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnclosedReuters);
    }

    #[test]
    fn tags_inside_body_are_dropped() {
        let src = br#"<REUTERS NEWID="5"><TEXT><BODY>net <B>profit</B> up</BODY></TEXT></REUTERS>"#;
        assert_eq!(parse_sgml(src).unwrap()[0].body, "net profit up");
    }

    fn doc(id: u32, split: LewisSplit) -> RawDocument {
        RawDocument {
            new_id: id,
            old_id: None,
            lewis_split: split,
            topics: vec![],
            title: String::new(),
            body: String::new(),
            date: String::new(),
        }
    }

    #[test]
    fn lewis_partition() {
        let docs = vec![
            doc(1, LewisSplit::Train),
            doc(2, LewisSplit::Test),
            doc(3, LewisSplit::Train),
            doc(4, LewisSplit::NotUsed),
            doc(5, LewisSplit::parse("BOGUS")),
        ];
        let s = split_lewis(docs);
        assert_eq!(s.training.iter().map(|d| d.new_id).collect::<Vec<_>>(), [1, 3]);
        assert_eq!(s.test.iter().map(|d| d.new_id).collect::<Vec<_>>(), [2]);
        assert_eq!((s.discarded, s.unknown_split), (2, 1));

        let s = split_lewis(vec![doc(1, LewisSplit::NotUsed), doc(2, LewisSplit::NotUsed)]);
        assert!(s.training.is_empty() && s.test.is_empty());
    }

    #[test]
    fn stats_of_small_split() {
        let mut a = doc(1, LewisSplit::Train);
        a.body = "one two three".into();
        a.topics = vec!["earn".into()];
        let mut b = doc(2, LewisSplit::Train);
        b.title = "four five".into();
        b.body = "six seven eight".into();
        let split = split_lewis(vec![a, b]);
        let st = compute_stats(&split, &tokenize);
        assert_eq!(st.training.word_occurrences, 8);
        assert_eq!(st.training.topic_occurrences, 1);
        assert_eq!(st.training.avg_topics_per_doc, 0.5);
        assert_eq!(st.training.pct_with_topics, 50.0);
        assert_eq!(st.total.word_occurrences, 8);
        assert_eq!(st.test, SubsetStats::default());
    }

    #[test]
    fn empty_split_stats_are_zero() {
        let st = compute_stats(&CorpusSplit::default(), &tokenize);
        assert_eq!(st, CorpusStats::default());
        assert!(st.to_table().contains("Doc. average"));
    }

    #[test]
    fn thousands_separator() {
        assert_eq!(thousands(0), "0");
        assert_eq!(thousands(999), "999");
        assert_eq!(thousands(1820881), "1,820,881");
        assert_eq!(thousands(13625), "13,625");
    }
}
