use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use bisetkit_bisets::{format_wr, parse_wr, WrFile, WreathBiset};
use bisetkit_dynamics::{fixture, format_htree, hubbard_to_gob, parse_htree, Fixture, HubbardBundle};
use bisetkit_gob::{format_gob, parse_gob, FundamentalBiset, GraphOfBisets};
use bisetkit_graphs::{format_gog, parse_gog, GraphOfGroups};

use crate::error::CliError;

/// One loaded object.
#[derive(Clone, Debug)]
pub enum Entry {
    Gog(GraphOfGroups),
    Gob(GraphOfBisets),
    Bundle(HubbardBundle),
    Biset(WrFile),
}

impl Entry {
    pub fn kind(&self) -> &'static str {
        match self {
            Entry::Gog(_) => "gog",
            Entry::Gob(_) => "gob",
            Entry::Bundle(_) => "htree",
            Entry::Biset(_) => "wr",
        }
    }

    pub fn emit(&self) -> String {
        match self {
            Entry::Gog(g) => format_gog(g),
            Entry::Gob(g) => format_gob(g),
            Entry::Bundle(b) => format_htree(b),
            Entry::Biset(w) => format_wr(&w.biset, w.peripheral.as_ref()),
        }
    }
}

/// Named entries, loaded from files or fixtures.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub entries: BTreeMap<String, Entry>,
}

impl Workspace {
    pub fn insert(&mut self, name: String, e: Entry) -> Result<(), CliError> {
        if self.entries.contains_key(&name) {
            return Err(CliError::invalid(format!("two entries are named `{name}`")));
        }
        self.entries.insert(name, e);
        Ok(())
    }
}

fn with_source(path: &str, e: impl Into<CliError>) -> CliError {
    let mut e = e.into();
    e.msg = format!("{path}: {}", e.msg);
    e
}

pub fn parse_as(kind: &str, text: &str) -> Result<Entry, CliError> {
    Ok(match kind {
        "gog" => Entry::Gog(parse_gog(text)?),
        "gob" => Entry::Gob(parse_gob(text)?),
        "htree" => Entry::Bundle(parse_htree(text)?),
        "wr" => Entry::Biset(parse_wr(text)?),
        other => return Err(CliError::parse(format!("unknown format `{other}`"))),
    })
}

// Formats tried on standard input, most specific first.
const SNIFF: [&str; 4] = ["gob", "htree", "wr", "gog"];

fn sniff(text: &str) -> Result<Entry, CliError> {
    let mut first = None;
    for k in SNIFF {
        match parse_as(k, text) {
            Ok(e) => return Ok(e),
            Err(e) => {
                first.get_or_insert(e);
            }
        }
    }
    Err(first.unwrap())
}

/// Loads a file by extension; `-` reads standard input and guesses.
pub fn load_path(path: &str) -> Result<(String, Entry), CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::parse(format!("stdin: {e}")))?;
        return Ok(("stdin".into(), sniff(&text).map_err(|e| with_source("stdin", e))?));
    }
    let p = Path::new(path);
    let text = std::fs::read_to_string(p).map_err(|e| CliError::parse(format!("{path}: {e}")))?;
    let name = p.file_stem().and_then(|s| s.to_str()).unwrap_or(path).to_string();
    let entry = match p.extension().and_then(|s| s.to_str()) {
        Some(ext) => parse_as(ext, &text),
        None => sniff(&text),
    };
    Ok((name, entry.map_err(|e| with_source(path, e))?))
}

/// A path, `-`, a fixture name, or any of these followed by `_fb` for the
/// fundamental biset at the default base points.
pub fn resolve(spec: &str) -> Result<Entry, CliError> {
    if spec == "-" || Path::new(spec).is_file() {
        return Ok(load_path(spec)?.1);
    }
    if let Some(f) = fixture(spec) {
        return Ok(match f {
            Fixture::Gob(g) => Entry::Gob(g),
            Fixture::Bundle(b) => Entry::Bundle(b),
            Fixture::Polynomial(p) => Entry::Biset(WrFile { biset: p.biset, peripheral: Some(p.peripheral) }),
        });
    }
    if let Some(base) = spec.strip_suffix("_fb") {
        let g = as_gob(resolve(base)?)?;
        let fb = fundamental(&g, None, None)?;
        return Ok(Entry::Biset(WrFile { biset: fb.biset, peripheral: None }));
    }
    Err(CliError::parse(format!(
        "`{spec}` is neither a file nor a fixture ({})",
        bisetkit_dynamics::fixtures::FIXTURE_NAMES.join(", ")
    )))
}

fn mismatch(want: &str, e: &Entry) -> CliError {
    CliError::invalid(format!("expected {want}, got a {} entry", e.kind()))
}

pub fn as_gob(e: Entry) -> Result<GraphOfBisets, CliError> {
    match e {
        Entry::Gob(g) => Ok(g),
        Entry::Bundle(b) => Ok(hubbard_to_gob(&b)?),
        other => Err(mismatch("a graph of bisets or a Hubbard bundle", &other)),
    }
}

pub fn as_bundle(e: Entry) -> Result<HubbardBundle, CliError> {
    match e {
        Entry::Bundle(b) => Ok(b),
        other => Err(mismatch("a Hubbard bundle", &other)),
    }
}

pub fn as_wr(e: Entry) -> Result<WrFile, CliError> {
    match e {
        Entry::Biset(w) => Ok(w),
        other => Err(mismatch("a wreath recursion", &other)),
    }
}

pub fn as_biset(e: Entry) -> Result<WreathBiset, CliError> {
    Ok(as_wr(e)?.biset)
}

pub fn as_gog(e: Entry) -> Result<GraphOfGroups, CliError> {
    match e {
        Entry::Gog(g) => Ok(g),
        Entry::Gob(g) => Ok(g.right),
        Entry::Bundle(b) => Ok(b.base.gog()),
        other => Err(mismatch("a graph of groups", &other)),
    }
}

/// Fundamental biset at the named base points (defaults otherwise).
pub fn fundamental(g: &GraphOfBisets, dagger: Option<&str>, star: Option<&str>) -> Result<FundamentalBiset, CliError> {
    let table = match g.is_left_fibrant()? {
        bisetkit_gob::Fibrancy::Fibrant(t) => t,
        bisetkit_gob::Fibrancy::NotFibrant { vertex, edge, reason } => {
            return Err(CliError::invalid(format!(
                "not left-fibrant at `{}` over `{}`: {reason}",
                g.carrier.name(vertex),
                g.right.graph.name(edge)
            )))
        }
    };
    let (d0, s0) = g.default_basepoints().ok_or_else(|| CliError::invalid("empty graph"))?;
    let pick = |graph: &bisetkit_graphs::Graph, name: Option<&str>, default: usize| match name {
        None => Ok(default),
        Some(n) => graph
            .index_of(n)
            .filter(|&v| graph.is_vertex(v))
            .ok_or_else(|| CliError::invalid(format!("no vertex `{n}`"))),
    };
    let dagger = pick(&g.left.graph, dagger, d0)?;
    let star = pick(&g.right.graph, star, s0)?;
    Ok(g.fundamental_biset(dagger, star, &table)?)
}
