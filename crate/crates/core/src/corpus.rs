//! Batch analysis over a manifest of texts, group means, I-alpha
//! classification and result files.
//!
//! Manifest: CSV with header `text_id,path,language,genre`, or a JSON array of
//! objects with the same keys. Relative paths resolve against the manifest's
//! directory.
//!
//! Results: CSV (or JSON array) with columns
//! `text_id,language,genre,n_tokens,n_types,lambda0,lambda1,I,alpha,chi_square,dof,clipped,unreliable,error`.
//! Floats carry 6 decimals. A text that failed has empty numeric fields and
//! its message in `error`.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, PathContext, Result};
use crate::estimate::{fit_text, FitResult};
use crate::textproc::{tokenize_stream, RuleRegistry};

pub mod demo;

pub const RESULT_COLUMNS: [&str; 14] = [
    "text_id",
    "language",
    "genre",
    "n_tokens",
    "n_types",
    "lambda0",
    "lambda1",
    "I",
    "alpha",
    "chi_square",
    "dof",
    "clipped",
    "unreliable",
    "error",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub text_id: String,
    pub path: PathBuf,
    pub language: String,
    pub genre: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TextMetrics {
    pub n_tokens: u64,
    pub n_types: u64,
    pub lambda0: f64,
    pub lambda1: f64,
    pub i_lang: f64,
    pub alpha: f64,
    pub chi_square: f64,
    pub dof: u32,
    pub clipped: bool,
    pub unreliable: bool,
}

impl From<&FitResult> for TextMetrics {
    fn from(f: &FitResult) -> Self {
        TextMetrics {
            n_tokens: f.n_tokens,
            n_types: f.n_types,
            lambda0: f.params.lambda0(),
            lambda1: f.params.lambda1(),
            i_lang: f.invariants.i_lang,
            alpha: f.invariants.alpha,
            chi_square: f.chi_square,
            dof: f.dof,
            clipped: f.clipped,
            unreliable: f.unreliable,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TextResult {
    pub text_id: String,
    pub language: String,
    pub genre: String,
    pub outcome: std::result::Result<TextMetrics, String>,
}

impl TextResult {
    pub fn metrics(&self) -> Option<&TextMetrics> {
        self.outcome.as_ref().ok()
    }

    /// Fitted, and large enough to count towards group means.
    pub fn reliable_metrics(&self) -> Option<&TextMetrics> {
        self.metrics().filter(|m| !m.unreliable)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Reads and validates a manifest against the rule packs in `registry`.
pub fn load_manifest(path: &Path, registry: &RuleRegistry) -> Result<Vec<ManifestEntry>> {
    let text = fs::read_to_string(path).at(path)?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let mut entries = if is_json {
        serde_json::from_str::<Vec<ManifestEntry>>(&text)
            .map_err(|e| parse_err(e.line(), e.to_string()))?
    } else {
        parse_manifest_csv(&text)?
    };

    let base = path.parent().unwrap_or(Path::new(""));
    let mut seen = HashSet::new();
    for e in &mut entries {
        if !seen.insert(e.text_id.clone()) {
            return Err(Error::DuplicateId(e.text_id.clone()));
        }
        if !registry.contains(&e.language) {
            return Err(Error::UnknownLanguage(e.language.clone()));
        }
        if e.path.is_relative() {
            e.path = base.join(&e.path);
        }
    }
    Ok(entries)
}

fn parse_manifest_csv(text: &str) -> Result<Vec<ManifestEntry>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    let expected = ["text_id", "path", "language", "genre"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(parse_err(
            1,
            format!("header must be `{}`", expected.join(",")),
        ));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.iter().take(4).any(str::is_empty) {
            return Err(parse_err(line, "empty field"));
        }
        out.push(ManifestEntry {
            text_id: rec[0].to_string(),
            path: PathBuf::from(&rec[1]),
            language: rec[2].to_string(),
            genre: rec[3].to_string(),
        });
    }
    Ok(out)
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = fs::read(path).at(path)?;
    String::from_utf8(bytes).map_err(|_| Error::Encoding(path.to_path_buf()))
}

pub fn analyze_entry(
    entry: &ManifestEntry,
    registry: &RuleRegistry,
    lambda1_min: f64,
) -> Result<FitResult> {
    let rules = registry.get(&entry.language)?;
    let text = read_text(&entry.path)?;
    let stream = tokenize_stream(entry.text_id.clone(), &text, rules);
    fit_text(&stream, rules, lambda1_min)
}

/// Fits every entry in parallel; output order follows `entries`.
pub fn analyze_corpus(
    entries: &[ManifestEntry],
    registry: &RuleRegistry,
    lambda1_min: f64,
) -> Vec<TextResult> {
    entries
        .par_iter()
        .map(|e| TextResult {
            text_id: e.text_id.clone(),
            language: e.language.clone(),
            genre: e.genre.clone(),
            outcome: analyze_entry(e, registry, lambda1_min)
                .map(|f| TextMetrics::from(&f))
                .map_err(|err| err.to_string()),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupMean {
    /// `None` when no reliable row is in the group.
    pub mean: Option<f64>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GroupMeans {
    pub languages: BTreeMap<String, GroupMean>,
    pub genres: BTreeMap<String, GroupMean>,
}

fn order_free_mean(mut values: Vec<f64>) -> GroupMean {
    values.sort_by(f64::total_cmp);
    let count = values.len();
    let mean = (count > 0).then(|| values.iter().sum::<f64>() / count as f64);
    GroupMean { mean, count }
}

/// Unweighted per-language mean I and per-genre mean alpha over reliable rows.
pub fn group_means(results: &[TextResult]) -> GroupMeans {
    let mut langs: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut genres: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for r in results {
        let l = langs.entry(r.language.clone()).or_default();
        let g = genres.entry(r.genre.clone()).or_default();
        if let Some(m) = r.reliable_metrics() {
            l.push(m.i_lang);
            g.push(m.alpha);
        }
    }
    GroupMeans {
        languages: langs
            .into_iter()
            .map(|(k, v)| (k, order_free_mean(v)))
            .collect(),
        genres: genres
            .into_iter()
            .map(|(k, v)| (k, order_free_mean(v)))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub language_anchors: BTreeMap<String, f64>,
    pub genre_anchors: BTreeMap<String, f64>,
}

impl Default for ReferenceTable {
    fn default() -> Self {
        let langs = [("en", 0.08), ("it", 0.84), ("de", 0.34)];
        let genres = [("letters", 0.6), ("scientific", 0.8), ("newspaper", 0.8)];
        ReferenceTable {
            language_anchors: langs.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            genre_anchors: genres.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

impl ReferenceTable {
    pub fn empty() -> Self {
        ReferenceTable {
            language_anchors: BTreeMap::new(),
            genre_anchors: BTreeMap::new(),
        }
    }

    /// Applies `language.<code> = I` / `genre.<label> = alpha` lines on top of
    /// the current anchors.
    pub fn apply_overrides(&mut self, src: &str) -> Result<()> {
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(line_no, "expected `key = value`"))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad number `{}`", value.trim())))?;
            match key.trim().split_once('.') {
                Some(("language", code)) if !code.is_empty() => {
                    if !(value >= 0.0 && value.is_finite()) {
                        return Err(parse_err(line_no, "language anchor I must be >= 0"));
                    }
                    self.language_anchors.insert(code.to_string(), value);
                }
                Some(("genre", label)) if !label.is_empty() => {
                    if !(0.0..=1.0).contains(&value) {
                        return Err(parse_err(line_no, "genre anchor alpha must be in [0, 1]"));
                    }
                    self.genre_anchors.insert(label.to_string(), value);
                }
                _ => return Err(parse_err(line_no, format!("unknown key `{}`", key.trim()))),
            }
        }
        Ok(())
    }

    /// Defaults extended by the override file at `path`.
    pub fn load(path: &Path) -> Result<Self> {
        let mut t = ReferenceTable::default();
        t.apply_overrides(&fs::read_to_string(path).at(path)?)?;
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub language: String,
    pub genre: String,
    pub language_distance: f64,
    pub genre_distance: f64,
    /// All anchors at the minimal distance, sorted; more than one means a tie.
    pub language_ties: Vec<String>,
    pub genre_ties: Vec<String>,
}

fn nearest(value: f64, anchors: &BTreeMap<String, f64>) -> (String, f64, Vec<String>) {
    let best = anchors
        .values()
        .map(|a| (value - a).abs())
        .fold(f64::INFINITY, f64::min);
    let ties: Vec<String> = anchors
        .iter()
        .filter(|(_, a)| (value - *a).abs() == best)
        .map(|(k, _)| k.clone())
        .collect();
    (ties[0].clone(), best, ties)
}

/// Nearest vertical line (language) and nearest horizontal line (genre).
pub fn classify(i_lang: f64, alpha: f64, table: &ReferenceTable) -> Result<Classification> {
    if table.language_anchors.is_empty() || table.genre_anchors.is_empty() {
        return Err(Error::EmptyTable);
    }
    if !(i_lang.is_finite() && alpha.is_finite()) {
        return Err(Error::domain("coordinates must be finite"));
    }
    let (language, language_distance, language_ties) = nearest(i_lang, &table.language_anchors);
    let (genre, genre_distance, genre_ties) = nearest(alpha, &table.genre_anchors);
    Ok(Classification {
        language,
        genre,
        language_distance,
        genre_distance,
        language_ties,
        genre_ties,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFormat {
    Csv,
    Json,
}

impl ResultFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => ResultFormat::Json,
            _ => ResultFormat::Csv,
        }
    }
}

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

/// Rounds to 6 decimals for JSON output; non-finite values become null.
pub fn json_f6(x: f64) -> Value {
    if x.is_finite() {
        let r = (x * 1e6).round() / 1e6;
        json!(if r == 0.0 { 0.0 } else { r })
    } else {
        Value::Null
    }
}

fn result_json(r: &TextResult) -> Value {
    let mut obj = Map::new();
    obj.insert("text_id".into(), json!(r.text_id));
    obj.insert("language".into(), json!(r.language));
    obj.insert("genre".into(), json!(r.genre));
    let m = r.metrics();
    let num = |f: fn(&TextMetrics) -> f64| m.map_or(Value::Null, |m| json_f6(f(m)));
    obj.insert(
        "n_tokens".into(),
        m.map_or(Value::Null, |m| json!(m.n_tokens)),
    );
    obj.insert(
        "n_types".into(),
        m.map_or(Value::Null, |m| json!(m.n_types)),
    );
    obj.insert("lambda0".into(), num(|m| m.lambda0));
    obj.insert("lambda1".into(), num(|m| m.lambda1));
    obj.insert("I".into(), num(|m| m.i_lang));
    obj.insert("alpha".into(), num(|m| m.alpha));
    obj.insert("chi_square".into(), num(|m| m.chi_square));
    obj.insert("dof".into(), m.map_or(Value::Null, |m| json!(m.dof)));
    obj.insert(
        "clipped".into(),
        m.map_or(Value::Null, |m| json!(m.clipped)),
    );
    obj.insert(
        "unreliable".into(),
        m.map_or(Value::Null, |m| json!(m.unreliable)),
    );
    obj.insert(
        "error".into(),
        r.outcome.as_ref().err().map_or(Value::Null, |e| json!(e)),
    );
    Value::Object(obj)
}

pub fn write_results_to<W: Write>(
    results: &[TextResult],
    out: W,
    format: ResultFormat,
) -> Result<()> {
    match format {
        ResultFormat::Json => {
            let arr: Vec<Value> = results.iter().map(result_json).collect();
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &arr)?;
            out.write_all(b"\n")?;
            out.flush()?;
        }
        ResultFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(RESULT_COLUMNS)?;
            for r in results {
                let mut row = vec![r.text_id.clone(), r.language.clone(), r.genre.clone()];
                match &r.outcome {
                    Ok(m) => {
                        row.extend([
                            m.n_tokens.to_string(),
                            m.n_types.to_string(),
                            f6(m.lambda0),
                            f6(m.lambda1),
                            f6(m.i_lang),
                            f6(m.alpha),
                            f6(m.chi_square),
                            m.dof.to_string(),
                            m.clipped.to_string(),
                            m.unreliable.to_string(),
                            String::new(),
                        ]);
                    }
                    Err(e) => {
                        row.extend(std::iter::repeat_n(String::new(), 10));
                        row.push(e.clone());
                    }
                }
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn write_results(results: &[TextResult], path: &Path, format: ResultFormat) -> Result<()> {
    let file = fs::File::create(path).at(path)?;
    write_results_to(results, std::io::BufWriter::new(file), format)
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, idx: usize, line: usize) -> Result<T> {
    rec[idx].parse().map_err(|_| {
        parse_err(
            line,
            format!("bad `{}` value `{}`", RESULT_COLUMNS[idx], &rec[idx]),
        )
    })
}

fn results_from_csv(text: &str) -> Result<Vec<TextResult>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != RESULT_COLUMNS {
        return Err(parse_err(1, "unexpected results header"));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let outcome = if rec[13].is_empty() {
            Ok(TextMetrics {
                n_tokens: field(&rec, 3, line)?,
                n_types: field(&rec, 4, line)?,
                lambda0: field(&rec, 5, line)?,
                lambda1: field(&rec, 6, line)?,
                i_lang: field(&rec, 7, line)?,
                alpha: field(&rec, 8, line)?,
                chi_square: field(&rec, 9, line)?,
                dof: field(&rec, 10, line)?,
                clipped: field(&rec, 11, line)?,
                unreliable: field(&rec, 12, line)?,
            })
        } else {
            Err(rec[13].to_string())
        };
        out.push(TextResult {
            text_id: rec[0].to_string(),
            language: rec[1].to_string(),
            genre: rec[2].to_string(),
            outcome,
        });
    }
    Ok(out)
}

fn results_from_json(text: &str) -> Result<Vec<TextResult>> {
    let rows: Vec<Map<String, Value>> =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    rows.into_iter()
        .enumerate()
        .map(|(i, row)| {
            let bad =
                |key: &str| parse_err(i + 1, format!("row {}: bad or missing `{key}`", i + 1));
            let s = |key: &str| {
                row.get(key)
                    .and_then(Value::as_str)
                    .map(str::to_string)
                    .ok_or_else(|| bad(key))
            };
            let f = |key: &str| -> Result<f64> {
                match row.get(key) {
                    Some(Value::Null) => Ok(f64::INFINITY),
                    Some(v) => v.as_f64().ok_or_else(|| bad(key)),
                    None => Err(bad(key)),
                }
            };
            let u = |key: &str| row.get(key).and_then(Value::as_u64).ok_or_else(|| bad(key));
            let b = |key: &str| {
                row.get(key)
                    .and_then(Value::as_bool)
                    .ok_or_else(|| bad(key))
            };
            let outcome = match row.get("error") {
                Some(Value::String(e)) => Err(e.clone()),
                _ => Ok(TextMetrics {
                    n_tokens: u("n_tokens")?,
                    n_types: u("n_types")?,
                    lambda0: f("lambda0")?,
                    lambda1: f("lambda1")?,
                    i_lang: f("I")?,
                    alpha: f("alpha")?,
                    chi_square: f("chi_square")?,
                    dof: u("dof")? as u32,
                    clipped: b("clipped")?,
                    unreliable: b("unreliable")?,
                }),
            };
            Ok(TextResult {
                text_id: s("text_id")?,
                language: s("language")?,
                genre: s("genre")?,
                outcome,
            })
        })
        .collect()
}

pub fn read_results(path: &Path) -> Result<Vec<TextResult>> {
    let text = fs::read_to_string(path).at(path)?;
    match ResultFormat::from_path(path) {
        ResultFormat::Csv => results_from_csv(&text),
        ResultFormat::Json => results_from_json(&text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok_row(id: &str, lang: &str, genre: &str, i_lang: f64, alpha: f64) -> TextResult {
        TextResult {
            text_id: id.into(),
            language: lang.into(),
            genre: genre.into(),
            outcome: Ok(TextMetrics {
                n_tokens: 1000,
                n_types: 300,
                lambda0: 1.7,
                lambda1: 0.98,
                i_lang,
                alpha,
                chi_square: 12.5,
                dof: 3,
                clipped: false,
                unreliable: false,
            }),
        }
    }

    #[test]
    fn classify_reference_anchors() {
        let t = ReferenceTable::default();
        let c = classify(0.34, 0.6, &t).unwrap();
        assert_eq!((c.language.as_str(), c.genre.as_str()), ("de", "letters"));
        assert_eq!((c.language_distance, c.genre_distance), (0.0, 0.0));

        let c = classify(0.08, 0.8, &t).unwrap();
        assert_eq!((c.language.as_str(), c.genre.as_str()), ("en", "newspaper"));
        assert_eq!(c.genre_ties, ["newspaper", "scientific"]);
        assert_eq!(c.language_ties, ["en"]);

        let c = classify(0.84, 0.6, &t).unwrap();
        assert_eq!((c.language.as_str(), c.genre.as_str()), ("it", "letters"));
    }

    #[test]
    fn classify_empty_table() {
        assert!(matches!(
            classify(0.3, 0.6, &ReferenceTable::empty()),
            Err(Error::EmptyTable)
        ));
    }

    #[test]
    fn overrides_extend_defaults() {
        let mut t = ReferenceTable::default();
        t.apply_overrides("# extra\nlanguage.fr = 0.2\ngenre.fiction = 0.7\nlanguage.de = 0.35\n")
            .unwrap();
        assert_eq!(t.language_anchors["fr"], 0.2);
        assert_eq!(t.language_anchors["de"], 0.35);
        assert_eq!(t.genre_anchors["fiction"], 0.7);
        assert_eq!(t.language_anchors.len(), 4);
        assert!(t.apply_overrides("genre.x = 1.5").is_err());
        assert!(t.apply_overrides("language.x = -1").is_err());
        assert!(matches!(
            t.apply_overrides("\nfoo.x = 1"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn group_means_basic() {
        let rows = vec![
            ok_row("a", "de", "letters", 0.30, 0.55),
            ok_row("b", "de", "scientific", 0.38, 0.8),
        ];
        let g = group_means(&rows);
        assert!((g.languages["de"].mean.unwrap() - 0.34).abs() < 1e-15);
        assert_eq!(g.genres["letters"].mean, Some(0.55));
        assert_eq!(g.genres["letters"].count, 1);
    }

    #[test]
    fn unreliable_and_error_rows_make_empty_groups() {
        let mut r = ok_row("a", "en", "letters", 0.1, 0.6);
        if let Ok(m) = &mut r.outcome {
            m.unreliable = true;
        }
        let e = TextResult {
            text_id: "b".into(),
            language: "en".into(),
            genre: "letters".into(),
            outcome: Err("missing".into()),
        };
        let g = group_means(&[r, e]);
        assert_eq!(
            g.languages["en"],
            GroupMean {
                mean: None,
                count: 0
            }
        );
        assert_eq!(g.genres["letters"].mean, None);
    }

    #[test]
    fn csv_round_trip_and_header_only() {
        let rows = vec![
            ok_row("a", "de", "letters", 0.123456789, 0.6),
            TextResult {
                text_id: "b,c".into(),
                language: "it".into(),
                genre: "letters".into(),
                outcome: Err("file not found".into()),
            },
        ];
        let mut buf = Vec::new();
        write_results_to(&rows, &mut buf, ResultFormat::Csv).unwrap();
        let back = results_from_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].metrics().unwrap().i_lang, 0.123457);
        assert_eq!(back[1].outcome, Err("file not found".into()));
        assert_eq!(back[1].text_id, "b,c");

        let mut buf = Vec::new();
        write_results_to(&[], &mut buf, ResultFormat::Csv).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            RESULT_COLUMNS.join(",") + "\n"
        );
    }

    #[test]
    fn json_rows_share_keys() {
        let rows = vec![
            ok_row("a", "de", "letters", 0.34, 0.6),
            TextResult {
                text_id: "b".into(),
                language: "de".into(),
                genre: "letters".into(),
                outcome: Err("boom".into()),
            },
        ];
        let mut buf = Vec::new();
        write_results_to(&rows, &mut buf, ResultFormat::Json).unwrap();
        let v: Vec<Map<String, Value>> = serde_json::from_slice(&buf).unwrap();
        let keys = |m: &Map<String, Value>| m.keys().cloned().collect::<HashSet<_>>();
        assert_eq!(keys(&v[0]), keys(&v[1]));
        assert_eq!(keys(&v[0]).len(), RESULT_COLUMNS.len());
        let back = results_from_json(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn manifest_csv_parse_errors_report_line() {
        let text = "text_id,path,language,genre\na,a.txt,de,letters\nb,b.txt,de\n";
        match parse_manifest_csv(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_manifest_csv("id,path\n").is_err());
    }
}
