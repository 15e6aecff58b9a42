use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::resolve::Resolver;
use crate::schema::*;
use workbench_core::Bounds;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadError {
    Io {
        path: String,
        message: String,
    },
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    Schema {
        origin: String,
        message: String,
    },
    Duplicate {
        name: String,
        first: String,
        second: String,
    },
    UnresolvedReference {
        document: String,
        reference: String,
    },
    WrongKind {
        document: String,
        reference: String,
        found: String,
        expected: String,
    },
    Semantic {
        document: String,
        message: String,
    },
}

impl LoadError {
    pub fn semantic(document: &str, message: impl fmt::Display) -> Self {
        LoadError::Semantic {
            document: document.to_string(),
            message: message.to_string(),
        }
    }

    pub fn unresolved(document: &str, reference: &str) -> Self {
        LoadError::UnresolvedReference {
            document: document.to_string(),
            reference: reference.to_string(),
        }
    }
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io { path, message } => write!(f, "{path}: {message}"),
            LoadError::Parse {
                origin,
                line,
                column,
                message,
            } => write!(f, "{origin}:{line}:{column}: parse error: {message}"),
            LoadError::Schema { origin, message } => write!(f, "{origin}: schema error: {message}"),
            LoadError::Duplicate { name, first, second } => {
                write!(f, "document `{name}` is defined in both {first} and {second}")
            }
            LoadError::UnresolvedReference { document, reference } => {
                write!(f, "{document}: unresolved reference `{reference}`")
            }
            LoadError::WrongKind {
                document,
                reference,
                found,
                expected,
            } => write!(f, "{document}: `{reference}` is a {found}, expected {expected}"),
            LoadError::Semantic { document, message } => write!(f, "{document}: {message}"),
        }
    }
}

impl std::error::Error for LoadError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub document: Document,
    /// File path, or `gallery:<file>` for bundled fixtures.
    pub origin: String,
}

/// Documents by name. Later layers shadow earlier ones; within a layer
/// names must be unique.
#[derive(Clone, Debug, Default)]
pub struct DocumentSet {
    entries: BTreeMap<String, Entry>,
}

impl DocumentSet {
    pub fn new() -> Self {
        DocumentSet::default()
    }

    /// Adds one layer of documents. Names already present from an earlier
    /// layer are replaced.
    pub fn overlay(&mut self, layer: Vec<Entry>) -> Result<(), Vec<LoadError>> {
        let mut seen: BTreeMap<String, String> = BTreeMap::new();
        let mut errors = Vec::new();
        for e in &layer {
            let name = e.document.name().to_string();
            if let Some(first) = seen.insert(name.clone(), e.origin.clone()) {
                errors.push(LoadError::Duplicate {
                    name,
                    first,
                    second: e.origin.clone(),
                });
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        for e in layer {
            self.entries.insert(e.document.name().to_string(), e);
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.get(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries.values()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn parse_error(origin: &str, e: serde_json::Error) -> LoadError {
    let message = e.to_string();
    // serde_json appends " at line L column C"; the location is kept separately
    let message = match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    };
    LoadError::Parse {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message,
    }
}

/// Parses one document. Syntax and field errors carry a line and column.
pub fn parse_document(text: &str, origin: &str) -> Result<Document, LoadError> {
    let header: Header = serde_json::from_str(text).map_err(|e| parse_error(origin, e))?;
    if header.schema != SCHEMA_VERSION {
        return Err(LoadError::Schema {
            origin: origin.to_string(),
            message: format!("unsupported schema version {} (expected {SCHEMA_VERSION})", header.schema),
        });
    }
    let p = |e| parse_error(origin, e);
    let doc = match header.kind.as_str() {
        "category" => Document::Category(serde_json::from_str(text).map_err(p)?),
        "space" => Document::Space(serde_json::from_str(text).map_err(p)?),
        "topology" => Document::Topology(serde_json::from_str(text).map_err(p)?),
        "presheaf" => Document::Presheaf(serde_json::from_str(text).map_err(p)?),
        "group-sheaf" => Document::GroupSheaf(serde_json::from_str(text).map_err(p)?),
        "action" => Document::Action(serde_json::from_str(text).map_err(p)?),
        "cocycle" => Document::Cocycle(serde_json::from_str(text).map_err(p)?),
        "formula" => Document::Formula(serde_json::from_str(text).map_err(p)?),
        "diagram" => Document::Diagram(serde_json::from_str(text).map_err(p)?),
        "functor" => Document::Functor(serde_json::from_str(text).map_err(p)?),
        other => {
            return Err(LoadError::Schema {
                origin: origin.to_string(),
                message: format!("unknown kind `{other}` (expected one of {})", KINDS.join(", ")),
            })
        }
    };
    if header.name.is_empty() {
        return Err(LoadError::Schema {
            origin: origin.to_string(),
            message: "document name is empty".into(),
        });
    }
    Ok(doc)
}

/// JSON files below `path` (or `path` itself), in sorted order.
pub fn document_files(path: &Path) -> Result<Vec<PathBuf>, LoadError> {
    let io = |e: std::io::Error| LoadError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let meta = fs::metadata(path).map_err(io)?;
    if meta.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut out = Vec::new();
    let mut stack = vec![path.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).map_err(io)? {
            let p = entry.map_err(io)?.path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|e| e == "json") {
                out.push(p);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Reads every document under `path` without resolving references.
pub fn read_documents(path: &Path) -> Result<Vec<Entry>, Vec<LoadError>> {
    let files = document_files(path).map_err(|e| vec![e])?;
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for f in files {
        let origin = f.display().to_string();
        match fs::read_to_string(&f) {
            Ok(text) => match parse_document(&text, &origin) {
                Ok(document) => entries.push(Entry { document, origin }),
                Err(e) => errors.push(e),
            },
            Err(e) => errors.push(LoadError::Io {
                path: origin,
                message: e.to_string(),
            }),
        }
    }
    if errors.is_empty() {
        Ok(entries)
    } else {
        Err(errors)
    }
}

/// Loads a file or directory and validates every document in it: all
/// references must resolve and every payload must pass its module's checks.
pub fn load(path: &Path, bounds: &Bounds) -> Result<DocumentSet, Vec<LoadError>> {
    let mut set = DocumentSet::new();
    set.overlay(read_documents(path)?)?;
    validate(&set, bounds)?;
    Ok(set)
}

/// Resolves every document of the set.
pub fn validate(set: &DocumentSet, bounds: &Bounds) -> Result<(), Vec<LoadError>> {
    let resolver = Resolver::new(set, *bounds);
    let errors: Vec<LoadError> = set.names().filter_map(|n| resolver.resolve_any(n).err()).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}
