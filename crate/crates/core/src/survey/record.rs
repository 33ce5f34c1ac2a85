use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonnegative rational kept exactly as computed (not reduced), so
/// `12/27` stays `12/27`. Serialized as `"num/den"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Ratio { num, den })
    }

    pub fn reduced(self) -> Ratio {
        let g = self.num.gcd(&self.den);
        Ratio {
            num: self.num / g,
            den: self.den / g,
        }
    }

    /// Compares values, not representations.
    pub fn cmp_value(&self, other: &Ratio) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Ratio {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("ratio {s:?} is not num/den")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("ratio {s:?}: {e}")))
        };
        Ratio::new(parse(n)?, parse(d)?)
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// Above the oracle limit: witnesses only, excluded from fitting.
    WitnessOnly,
    /// A witness bound, certificate or domination check failed.
    Falsified,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::WitnessOnly => "witness-only",
            Status::Falsified => "falsified",
            Status::Error => "error",
        }
    }
}

impl FromStr for Status {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ok" => Status::Ok,
            "witness-only" => Status::WitnessOnly,
            "falsified" => Status::Falsified,
            "error" => Status::Error,
            _ => return Err(Error::Parse(format!("unknown status {s:?}"))),
        })
    }
}

/// One (group, prime) result of a survey.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub name: String,
    pub family: String,
    pub dim: Option<u32>,
    pub group_digest: String,
    pub order: u64,
    pub p: u64,
    pub sylow_order: u64,
    pub oracle_index: Option<u64>,
    /// Construction tag to witness index.
    pub witness_indices: BTreeMap<String, u64>,
    /// `oracle_index / sylow_order³`.
    pub ratio: Option<Ratio>,
    pub chermak_delgado_index: Option<u64>,
    pub bounds_satisfied: bool,
    pub status: Status,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" | "json" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?} (jsonl or csv)"))),
        }
    }
}

const CSV_HEADER: [&str; 14] = [
    "name",
    "family",
    "dim",
    "group_digest",
    "order",
    "p",
    "sylow_order",
    "oracle_index",
    "witness_indices",
    "ratio",
    "chermak_delgado_index",
    "bounds_satisfied",
    "status",
    "error",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// One JSON object per line, keys sorted.
pub fn to_jsonl(records: &[SurveyRecord]) -> Result<String> {
    let mut out = String::new();
    for r in records {
        // serde_json's default map is ordered, so keys come out sorted.
        let value = serde_json::to_value(r)?;
        out.push_str(&serde_json::to_string(&value)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn to_csv(records: &[SurveyRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in records {
        let witnesses: Vec<String> = r
            .witness_indices
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        w.write_record([
            r.name.clone(),
            r.family.clone(),
            opt(&r.dim),
            r.group_digest.clone(),
            r.order.to_string(),
            r.p.to_string(),
            r.sylow_order.to_string(),
            opt(&r.oracle_index),
            witnesses.join(";"),
            opt(&r.ratio),
            opt(&r.chermak_delgado_index),
            r.bounds_satisfied.to_string(),
            r.status.as_str().to_string(),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Parse(format!("csv buffer: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn render(records: &[SurveyRecord], format: Format) -> Result<String> {
    match format {
        Format::Jsonl => to_jsonl(records),
        Format::Csv => to_csv(records),
    }
}

/// Writes `records` to `path`.
pub fn emit(records: &[SurveyRecord], format: Format, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = render(records, format)?;
    let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
}

pub fn parse_jsonl(text: &str) -> Result<Vec<SurveyRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| Ok(serde_json::from_str(l)?))
        .collect()
}

fn parse_opt<T: FromStr>(s: &str) -> Result<Option<T>>
where
    T::Err: fmt::Display,
{
    if s.is_empty() {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

fn parse_req<T: FromStr>(s: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    s.parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

pub fn parse_csv(text: &str) -> Result<Vec<SurveyRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse("unexpected CSV header".into()));
    }
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        let f = |i: usize| row.get(i).unwrap_or("");
        let mut witness_indices = BTreeMap::new();
        for part in f(8).split(';').filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("witness entry {part:?}")))?;
            witness_indices.insert(k.to_string(), parse_req(v)?);
        }
        out.push(SurveyRecord {
            name: f(0).to_string(),
            family: f(1).to_string(),
            dim: parse_opt(f(2))?,
            group_digest: f(3).to_string(),
            order: parse_req(f(4))?,
            p: parse_req(f(5))?,
            sylow_order: parse_req(f(6))?,
            oracle_index: parse_opt(f(7))?,
            witness_indices,
            ratio: parse_opt(f(9))?,
            chermak_delgado_index: parse_opt(f(10))?,
            bounds_satisfied: parse_req(f(11))?,
            status: parse_req(f(12))?,
            error: Some(f(13).to_string()).filter(|s| !s.is_empty()),
        });
    }
    Ok(out)
}

pub fn parse(text: &str, format: Format) -> Result<Vec<SurveyRecord>> {
    match format {
        Format::Jsonl => parse_jsonl(text),
        Format::Csv => parse_csv(text),
    }
}
