//! On-disk structure documents.
//!
//! A document is a JSON object with a `format_version`, a `kind` tag and
//! tables of records keyed by string ids. Bases and other referenced
//! structures are either `{"path": "..."}`, resolved relative to the
//! referring file, or an inline document.
//!
//! Emitted documents are canonical: every table is sorted by id, so
//! loading a canonical document and emitting it again reproduces the same
//! bytes.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::deloop::{tensor_enriched, unit_category, V2Category};
use crate::enrich::{EnrichedCategory, EnrichedFunctor};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Mor, MorphismRecord, NatFamily, Ob};
use crate::monoidal::{
    associator_exprs, associator_name, braiding_exprs, interchanger_exprs, interchanger_name, KFoldStructure,
    SymmetricStructure, TensorTable,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureDocument {
    pub format_version: u32,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Category(CategoryDoc),
    Kfold(KFoldDoc),
    Symmetric(SymmetricDoc),
    Enriched(EnrichedDoc),
    EnrichedFunctor(FunctorDoc),
    V2category(V2Doc),
}

/// A referenced structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Reference {
    Path { path: String },
    Inline(Box<StructureDocument>),
}

impl Reference {
    pub fn path(path: impl Into<String>) -> Self {
        Reference::Path { path: path.into() }
    }

    pub fn inline(doc: StructureDocument) -> Self {
        Reference::Inline(Box::new(doc))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityEntry {
    pub object: String,
    pub morphism: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeEntry {
    pub g: String,
    pub f: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: Vec<IdentityEntry>,
    /// Composites with an identity may be omitted.
    pub composition: Vec<CompositeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    pub left: String,
    pub right: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorDoc {
    pub objects: Vec<PairEntry>,
    pub morphisms: Vec<PairEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub at: Vec<String>,
    pub morphism: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexedTensor {
    pub index: usize,
    #[serde(flatten)]
    pub table: TensorDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssociatorDoc {
    pub index: usize,
    pub components: Vec<ComponentEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterchangerDoc {
    pub i: usize,
    pub j: usize,
    pub components: Vec<ComponentEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KFoldDoc {
    pub base: Reference,
    pub unit: String,
    pub tensors: Vec<IndexedTensor>,
    pub associators: Vec<AssociatorDoc>,
    pub interchangers: Vec<InterchangerDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricDoc {
    pub base: Reference,
    pub unit: String,
    pub tensor: TensorDoc,
    pub associator: Vec<ComponentEntry>,
    pub braiding: Vec<ComponentEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomEntry {
    pub from: String,
    pub to: String,
    pub object: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnrichedDoc {
    pub name: String,
    pub base: Reference,
    pub objects: Vec<String>,
    pub homs: Vec<HomEntry>,
    /// `at` is `[a, b, c]` for `M_{abc}`.
    pub composition: Vec<ComponentEntry>,
    pub identities: Vec<IdentityEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageEntry {
    pub object: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub from: String,
    pub to: String,
    pub morphism: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctorTables {
    pub object_map: Vec<ImageEntry>,
    pub components: Vec<ArrowEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub source: Reference,
    pub target: Reference,
    #[serde(flatten)]
    pub tables: FunctorTables,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct V2HomEntry {
    pub from: String,
    pub to: String,
    pub category: Reference,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct V2CompositeEntry {
    pub at: Vec<String>,
    pub functor: FunctorTables,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct V2IdentityEntry {
    pub object: String,
    pub functor: FunctorTables,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct V2Doc {
    pub name: String,
    pub base: Reference,
    pub objects: Vec<String>,
    pub homs: Vec<V2HomEntry>,
    pub composition: Vec<V2CompositeEntry>,
    pub identities: Vec<V2IdentityEntry>,
}

impl StructureDocument {
    pub fn new(body: Body) -> Self {
        StructureDocument {
            format_version: FORMAT_VERSION,
            body,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            Body::Category(_) => "category",
            Body::Kfold(_) => "kfold",
            Body::Symmetric(_) => "symmetric",
            Body::Enriched(_) => "enriched",
            Body::EnrichedFunctor(_) => "enriched-functor",
            Body::V2category(_) => "v2category",
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents serialize");
        out.push('\n');
        out
    }

    pub fn parse(text: &str, file: &str) -> Result<Self> {
        let doc: StructureDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
            file: file.into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if doc.format_version != FORMAT_VERSION {
            return Err(parse_error(file, text, "format_version", format!(
                "unsupported format version {} (expected {FORMAT_VERSION})",
                doc.format_version
            )));
        }
        Ok(doc)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| io_error(path, e))
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// A semantic error, located at the first occurrence of `needle` as a JSON
/// string in the source.
fn parse_error(file: &str, text: &str, needle: &str, message: String) -> Error {
    let quoted = format!("\"{needle}\"");
    let (line, column) = match text.find(&quoted) {
        Some(at) => {
            let before = &text[..at];
            let line = before.matches('\n').count() + 1;
            let column = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
            (line, column)
        }
        None => (0, 0),
    };
    Error::Parse {
        file: file.into(),
        line,
        column,
        message,
    }
}

/// A loaded structure.
#[derive(Debug, Clone)]
pub enum Structure {
    Category(Arc<FinCategory>),
    KFold(Arc<KFoldStructure>),
    Symmetric(Arc<SymmetricStructure>),
    Enriched(Arc<EnrichedCategory>),
    EnrichedFunctor(Arc<EnrichedFunctor>),
    V2Category(Arc<V2Category>),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Category(_) => "category",
            Structure::KFold(_) => "kfold",
            Structure::Symmetric(_) => "symmetric",
            Structure::Enriched(_) => "enriched",
            Structure::EnrichedFunctor(_) => "enriched-functor",
            Structure::V2Category(_) => "v2category",
        }
    }
}

/// Where a document came from, for error messages and relative paths.
struct Source<'a> {
    file: String,
    text: &'a str,
    dir: PathBuf,
}

impl Source<'_> {
    fn err(&self, needle: &str, message: impl Into<String>) -> Error {
        parse_error(&self.file, self.text, needle, message.into())
    }

    /// Wraps a constructor error so it names the file.
    fn wrap(&self, needle: &str, err: Error) -> Error {
        match err {
            e @ (Error::Parse { .. } | Error::Io { .. } | Error::BaseMismatch(_)) => e,
            e => self.err(needle, e.to_string()),
        }
    }
}

/// Resolves documents and their references, sharing structures loaded from
/// the same file.
#[derive(Debug, Default)]
pub struct Loader {
    cache: HashMap<PathBuf, Structure>,
}

fn index_of<'a>(names: impl IntoIterator<Item = &'a String>) -> HashMap<&'a str, usize> {
    names.into_iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect()
}

/// Fills a dense table from keyed records, rejecting unknown ids,
/// duplicates and gaps.
struct Filler<'s, 'a, T> {
    src: &'s Source<'a>,
    what: &'static str,
    slots: Vec<Option<T>>,
}

impl<'s, 'a, T: Copy> Filler<'s, 'a, T> {
    fn new(src: &'s Source<'a>, what: &'static str, len: usize) -> Self {
        Filler {
            src,
            what,
            slots: vec![None; len],
        }
    }

    fn set(&mut self, at: usize, value: T, needle: &str) -> Result<()> {
        if self.slots[at].replace(value).is_some() {
            return Err(self.src.err(needle, format!("duplicate {} entry", self.what)));
        }
        Ok(())
    }

    fn finish(self, describe: impl Fn(usize) -> String) -> Result<Vec<T>> {
        let what = self.what;
        let src = self.src;
        self.slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| src.err(what, format!("missing {what} entry for {}", describe(i)))))
            .collect()
    }
}

fn lookup(src: &Source<'_>, table: &HashMap<&str, usize>, name: &str, what: &str) -> Result<usize> {
    table
        .get(name)
        .copied()
        .ok_or_else(|| src.err(name, format!("unknown {what} `{name}`")))
}

fn tuple_offset(src: &Source<'_>, table: &HashMap<&str, usize>, at: &[String], arity: usize, what: &str) -> Result<usize> {
    if at.len() != arity {
        let needle = at.first().map_or("at", String::as_str);
        return Err(src.err(needle, format!("{what} index has {} entries, expected {arity}", at.len())));
    }
    let n = table.len();
    at.iter().try_fold(0, |acc, name| Ok(acc * n + lookup(src, table, name, "object")?))
}

impl Loader {
    pub fn new() -> Self {
        Loader::default()
    }

    /// Loads a document file and everything it references.
    pub fn load(&mut self, path: &Path) -> Result<Structure> {
        let key = fs::canonicalize(path).map_err(|e| io_error(path, e))?;
        if let Some(s) = self.cache.get(&key) {
            return Ok(s.clone());
        }
        let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        let file = path.display().to_string();
        let doc = StructureDocument::parse(&text, &file)?;
        let src = Source {
            file,
            text: &text,
            dir: key.parent().map(Path::to_path_buf).unwrap_or_default(),
        };
        let s = self.build(&doc, &src)?;
        self.cache.insert(key, s.clone());
        Ok(s)
    }

    /// Builds a structure from an already parsed document. Relative paths
    /// are resolved against `dir`.
    pub fn load_document(&mut self, doc: &StructureDocument, text: &str, file: &str, dir: &Path) -> Result<Structure> {
        let src = Source {
            file: file.into(),
            text,
            dir: dir.to_path_buf(),
        };
        self.build(doc, &src)
    }

    fn resolve(&mut self, r: &Reference, src: &Source<'_>) -> Result<Structure> {
        match r {
            Reference::Path { path } => {
                let full = src.dir.join(path);
                if !full.exists() {
                    return Err(src.err(path, format!("referenced file `{path}` does not exist")));
                }
                self.load(&full)
            }
            Reference::Inline(doc) => self.build(doc, src),
        }
    }

    fn resolve_category(&mut self, r: &Reference, src: &Source<'_>) -> Result<Arc<FinCategory>> {
        match self.resolve(r, src)? {
            Structure::Category(c) => Ok(c),
            other => Err(src.err("base", format!("base must be a category, found {}", other.kind()))),
        }
    }

    fn resolve_kfold(&mut self, r: &Reference, src: &Source<'_>) -> Result<Arc<KFoldStructure>> {
        match self.resolve(r, src)? {
            Structure::KFold(v) => Ok(v),
            other => Err(src.err("base", format!("base must be a kfold structure, found {}", other.kind()))),
        }
    }

    fn resolve_enriched(&mut self, r: &Reference, src: &Source<'_>, needle: &str) -> Result<Arc<EnrichedCategory>> {
        match self.resolve(r, src)? {
            Structure::Enriched(c) => Ok(c),
            other => Err(src.err(needle, format!("expected an enriched category, found {}", other.kind()))),
        }
    }

    fn build(&mut self, doc: &StructureDocument, src: &Source<'_>) -> Result<Structure> {
        Ok(match &doc.body {
            Body::Category(d) => Structure::Category(Arc::new(build_category(d, src)?)),
            Body::Kfold(d) => {
                let c = self.resolve_category(&d.base, src)?;
                Structure::KFold(Arc::new(build_kfold(d, c, src)?))
            }
            Body::Symmetric(d) => {
                let c = self.resolve_category(&d.base, src)?;
                Structure::Symmetric(Arc::new(build_symmetric(d, c, src)?))
            }
            Body::Enriched(d) => {
                let v = self.resolve_kfold(&d.base, src)?;
                Structure::Enriched(Arc::new(build_enriched(d, v, src)?))
            }
            Body::EnrichedFunctor(d) => {
                let source = self.resolve_enriched(&d.source, src, "source")?;
                let target = self.resolve_enriched(&d.target, src, "target")?;
                if !crate::enrich::same(source.base(), target.base()) {
                    return Err(Error::BaseMismatch(format!(
                        "`{}` and `{}` are enriched over different bases",
                        source.name(),
                        target.name()
                    )));
                }
                Structure::EnrichedFunctor(Arc::new(build_functor(&d.tables, source, target, src)?))
            }
            Body::V2category(d) => {
                let v = self.resolve_kfold(&d.base, src)?;
                let n = d.objects.len();
                let obs = index_of(&d.objects);
                let mut homs = vec![None; n * n];
                for h in &d.homs {
                    let at = lookup(src, &obs, &h.from, "object")? * n + lookup(src, &obs, &h.to, "object")?;
                    let cat = self.resolve_enriched(&h.category, src, &h.from)?;
                    if !crate::enrich::same(cat.base(), &v) {
                        return Err(Error::BaseMismatch(format!("hom `{}` is enriched over another base", cat.name())));
                    }
                    if homs[at].replace(cat).is_some() {
                        return Err(src.err(&h.from, format!("duplicate hom entry ({}, {})", h.from, h.to)));
                    }
                }
                let homs = homs
                    .into_iter()
                    .enumerate()
                    .map(|(p, h)| {
                        h.ok_or_else(|| src.err("homs", format!("missing hom entry ({}, {})", d.objects[p / n], d.objects[p % n])))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Structure::V2Category(Arc::new(build_v2(d, v, homs, src)?))
            }
        })
    }
}

fn build_category(d: &CategoryDoc, src: &Source<'_>) -> Result<FinCategory> {
    let obs = index_of(&d.objects);
    if obs.len() != d.objects.len() {
        return Err(src.err("objects", "duplicate object id"));
    }
    let mors = index_of(d.morphisms.iter().map(|m| &m.id));
    if mors.len() != d.morphisms.len() {
        return Err(src.err("morphisms", "duplicate morphism id"));
    }
    let records = d
        .morphisms
        .iter()
        .map(|m| {
            Ok(MorphismRecord {
                name: m.id.clone(),
                dom: Ob(lookup(src, &obs, &m.dom, "object")?),
                cod: Ob(lookup(src, &obs, &m.cod, "object")?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ids = Filler::new(src, "identity", d.objects.len());
    for e in &d.identities {
        let f = Mor(lookup(src, &mors, &e.morphism, "morphism")?);
        ids.set(lookup(src, &obs, &e.object, "object")?, f, &e.object)?;
    }
    let identities = ids.finish(|a| format!("object `{}`", d.objects[a]))?;
    let mut composites: BTreeMap<(usize, usize), Mor> = BTreeMap::new();
    for (i, rec) in records.iter().enumerate() {
        composites.insert((identities[rec.cod.0].0, i), Mor(i));
        composites.insert((i, identities[rec.dom.0].0), Mor(i));
    }
    let mut explicit = Filler::new(src, "composite", records.len() * records.len());
    for e in &d.composition {
        let g = lookup(src, &mors, &e.g, "morphism")?;
        let f = lookup(src, &mors, &e.f, "morphism")?;
        let h = Mor(lookup(src, &mors, &e.result, "morphism")?);
        explicit.set(g * records.len() + f, h, &e.g)?;
        composites.insert((g, f), h);
    }
    let composites = composites.into_iter().map(|((g, f), h)| (Mor(g), Mor(f), h));
    FinCategory::new(d.objects.clone(), records, identities, composites).map_err(|e| src.wrap("composition", e))
}

fn build_tensor(c: &FinCategory, d: &TensorDoc, src: &Source<'_>) -> Result<TensorTable> {
    let obs = index_of(c.object_names());
    let mor_names: Vec<String> = c.morphisms().map(|f| c.morphism_name(f).to_string()).collect();
    let mors = index_of(&mor_names);
    let (n, m) = (c.num_objects(), c.num_morphisms());
    let mut ot = Filler::new(src, "tensor object", n * n);
    for e in &d.objects {
        let at = lookup(src, &obs, &e.left, "object")? * n + lookup(src, &obs, &e.right, "object")?;
        ot.set(at, Ob(lookup(src, &obs, &e.result, "object")?), &e.left)?;
    }
    let mut mt = Filler::new(src, "tensor morphism", m * m);
    for e in &d.morphisms {
        let at = lookup(src, &mors, &e.left, "morphism")? * m + lookup(src, &mors, &e.right, "morphism")?;
        mt.set(at, Mor(lookup(src, &mors, &e.result, "morphism")?), &e.left)?;
    }
    let ot = ot.finish(|p| format!("({}, {})", c.object_names()[p / n], c.object_names()[p % n]))?;
    let mt = mt.finish(|p| format!("({}, {})", mor_names[p / m], mor_names[p % m]))?;
    TensorTable::new(c, ot, mt).map_err(|e| src.wrap("tensors", e))
}

fn build_components(
    c: &FinCategory,
    entries: &[ComponentEntry],
    arity: usize,
    what: &'static str,
    src: &Source<'_>,
) -> Result<Vec<Mor>> {
    let obs = index_of(c.object_names());
    let mor_names: Vec<String> = c.morphisms().map(|f| c.morphism_name(f).to_string()).collect();
    let mors = index_of(&mor_names);
    let n = c.num_objects();
    let mut table = Filler::new(src, what, n.pow(arity as u32));
    for e in entries {
        let at = tuple_offset(src, &obs, &e.at, arity, what)?;
        let needle = e.at.first().map_or(e.morphism.as_str(), String::as_str);
        table.set(at, Mor(lookup(src, &mors, &e.morphism, "morphism")?), needle)?;
    }
    table.finish(|mut p| {
        let mut idx = vec![String::new(); arity];
        for slot in idx.iter_mut().rev() {
            *slot = c.object_names()[p % n].clone();
            p /= n;
        }
        format!("({})", idx.join(", "))
    })
}

fn build_kfold(d: &KFoldDoc, c: Arc<FinCategory>, src: &Source<'_>) -> Result<KFoldStructure> {
    let unit = c.object(&d.unit).map_err(|e| src.wrap(&d.unit, e))?;
    let k = d.tensors.len();
    let mut tensors = vec![None; k];
    for t in &d.tensors {
        if t.index == 0 || t.index > k {
            return Err(src.err("index", format!("tensor index {} outside 1..={k}", t.index)));
        }
        if tensors[t.index - 1].replace(build_tensor(&c, &t.table, src)?).is_some() {
            return Err(src.err("index", format!("duplicate tensor {}", t.index)));
        }
    }
    let tensors: Vec<TensorTable> = tensors.into_iter().map(|t| t.expect("every index is filled once")).collect();
    let n = c.num_objects();
    let mut associators = vec![None; k];
    for a in &d.associators {
        if a.index == 0 || a.index > k {
            return Err(src.err("associators", format!("associator index {} outside 1..={k}", a.index)));
        }
        let (s, t) = associator_exprs(a.index);
        let comps = build_components(&c, &a.components, 3, "associator", src)?;
        let fam = NatFamily::new(associator_name(a.index), 3, n, s, t, comps).map_err(|e| src.wrap("associators", e))?;
        if associators[a.index - 1].replace(fam).is_some() {
            return Err(src.err("associators", format!("duplicate associator {}", a.index)));
        }
    }
    let associators = associators
        .into_iter()
        .enumerate()
        .map(|(i, a)| a.ok_or_else(|| src.err("associators", format!("missing associator {}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let mut interchangers = BTreeMap::new();
    for e in &d.interchangers {
        if !(1 <= e.i && e.i < e.j && e.j <= k) {
            return Err(src.err("interchangers", format!("interchanger ({}, {}) outside 1 ≤ i < j ≤ {k}", e.i, e.j)));
        }
        let (s, t) = interchanger_exprs(e.i, e.j);
        let comps = build_components(&c, &e.components, 4, "interchanger", src)?;
        let fam = NatFamily::new(interchanger_name(e.i, e.j), 4, n, s, t, comps).map_err(|x| src.wrap("interchangers", x))?;
        if interchangers.insert((e.i, e.j), fam).is_some() {
            return Err(src.err("interchangers", format!("duplicate interchanger ({}, {})", e.i, e.j)));
        }
    }
    KFoldStructure::new(c, unit, tensors, associators, interchangers).map_err(|e| src.wrap("interchangers", e))
}

fn build_symmetric(d: &SymmetricDoc, c: Arc<FinCategory>, src: &Source<'_>) -> Result<SymmetricStructure> {
    let unit = c.object(&d.unit).map_err(|e| src.wrap(&d.unit, e))?;
    let tensor = build_tensor(&c, &d.tensor, src)?;
    let n = c.num_objects();
    let (s, t) = associator_exprs(1);
    let associator = NatFamily::new("α", 3, n, s, t, build_components(&c, &d.associator, 3, "associator", src)?)
        .map_err(|e| src.wrap("associator", e))?;
    let (s, t) = braiding_exprs();
    let braiding = NatFamily::new("c", 2, n, s, t, build_components(&c, &d.braiding, 2, "braiding", src)?)
        .map_err(|e| src.wrap("braiding", e))?;
    SymmetricStructure::new(c, unit, tensor, associator, braiding).map_err(|e| src.wrap("braiding", e))
}

fn build_enriched(d: &EnrichedDoc, v: Arc<KFoldStructure>, src: &Source<'_>) -> Result<EnrichedCategory> {
    let c = v.base();
    let obs = index_of(&d.objects);
    if obs.len() != d.objects.len() {
        return Err(src.err("objects", "duplicate object id"));
    }
    let vobs = index_of(c.object_names());
    let mor_names: Vec<String> = c.morphisms().map(|f| c.morphism_name(f).to_string()).collect();
    let mors = index_of(&mor_names);
    let n = d.objects.len();
    let mut homs = Filler::new(src, "hom", n * n);
    for h in &d.homs {
        let at = lookup(src, &obs, &h.from, "object")? * n + lookup(src, &obs, &h.to, "object")?;
        homs.set(at, Ob(lookup(src, &vobs, &h.object, "object of the base")?), &h.from)?;
    }
    let homs = homs.finish(|p| format!("({}, {})", d.objects[p / n], d.objects[p % n]))?;
    let mut comp = Filler::new(src, "composition", n * n * n);
    for e in &d.composition {
        let at = tuple_offset(src, &obs, &e.at, 3, "composition")?;
        comp.set(at, Mor(lookup(src, &mors, &e.morphism, "morphism")?), &e.morphism)?;
    }
    let comp = comp.finish(|p| format!("({}, {}, {})", d.objects[p / (n * n)], d.objects[p / n % n], d.objects[p % n]))?;
    let mut ids = Filler::new(src, "identity", n);
    for e in &d.identities {
        ids.set(lookup(src, &obs, &e.object, "object")?, Mor(lookup(src, &mors, &e.morphism, "morphism")?), &e.object)?;
    }
    let ids = ids.finish(|a| format!("object `{}`", d.objects[a]))?;
    EnrichedCategory::new(d.name.clone(), v, d.objects.clone(), homs, comp, ids).map_err(|e| src.wrap("homs", e))
}

fn build_functor(
    d: &FunctorTables,
    source: Arc<EnrichedCategory>,
    target: Arc<EnrichedCategory>,
    src: &Source<'_>,
) -> Result<EnrichedFunctor> {
    let c = source.base().base();
    let sobs = index_of(source.object_names());
    let tobs = index_of(target.object_names());
    let mor_names: Vec<String> = c.morphisms().map(|f| c.morphism_name(f).to_string()).collect();
    let mors = index_of(&mor_names);
    let n = source.num_objects();
    let mut map = Filler::new(src, "object map", n);
    for e in &d.object_map {
        map.set(lookup(src, &sobs, &e.object, "object")?, lookup(src, &tobs, &e.image, "object")?, &e.object)?;
    }
    let map = map.finish(|a| format!("object `{}`", source.object_name(a)))?;
    let mut comps = Filler::new(src, "component", n * n);
    for e in &d.components {
        let at = lookup(src, &sobs, &e.from, "object")? * n + lookup(src, &sobs, &e.to, "object")?;
        comps.set(at, Mor(lookup(src, &mors, &e.morphism, "morphism")?), &e.from)?;
    }
    let comps = comps.finish(|p| format!("({}, {})", source.object_name(p / n), source.object_name(p % n)))?;
    EnrichedFunctor::new(source, target, map, comps).map_err(|e| src.wrap("object_map", e))
}

fn build_v2(d: &V2Doc, v: Arc<KFoldStructure>, homs: Vec<Arc<EnrichedCategory>>, src: &Source<'_>) -> Result<V2Category> {
    let n = d.objects.len();
    let obs = index_of(&d.objects);
    let mut comp: Vec<Option<&FunctorTables>> = vec![None; n * n * n];
    for e in &d.composition {
        let at = tuple_offset(src, &obs, &e.at, 3, "composition")?;
        if comp[at].replace(&e.functor).is_some() {
            return Err(src.err(&e.at[0], "duplicate composition entry"));
        }
    }
    let mut ids: Vec<Option<&FunctorTables>> = vec![None; n];
    for e in &d.identities {
        if ids[lookup(src, &obs, &e.object, "object")?].replace(&e.functor).is_some() {
            return Err(src.err(&e.object, "duplicate identity entry"));
        }
    }
    let missing = |what: &str, at: String| src.err(what, format!("missing {what} entry for {at}"));
    V2Category::from_fns(
        d.name.clone(),
        v,
        d.objects.clone(),
        homs,
        |u, w, x, source, target| {
            let tables = comp[(u * n + w) * n + x]
                .ok_or_else(|| missing("composition", format!("({}, {}, {})", d.objects[u], d.objects[w], d.objects[x])))?;
            build_functor(tables, source, target, src)
        },
        |u, source, target| {
            let tables = ids[u].ok_or_else(|| missing("identities", format!("object `{}`", d.objects[u])))?;
            build_functor(tables, source, target, src)
        },
    )
    .map_err(|e| src.wrap("composition", e))
}

fn sorted<T>(mut v: Vec<T>, key: impl Fn(&T) -> Vec<String>) -> Vec<T> {
    v.sort_by_cached_key(|x| key(x));
    v
}

fn sorted_names(names: &[String]) -> Vec<String> {
    let mut out = names.to_vec();
    out.sort();
    out
}

pub fn category_document(c: &FinCategory) -> StructureDocument {
    let name = |f: Mor| c.morphism_name(f).to_string();
    let obj = |a: Ob| c.object_name(a).to_string();
    let morphisms = sorted(
        c.morphisms()
            .map(|f| MorphismEntry {
                id: name(f),
                dom: obj(c.dom(f)),
                cod: obj(c.cod(f)),
            })
            .collect(),
        |m| vec![m.id.clone()],
    );
    let identities = sorted(
        c.objects()
            .map(|a| IdentityEntry {
                object: obj(a),
                morphism: name(c.identity(a)),
            })
            .collect(),
        |e| vec![e.object.clone()],
    );
    let composition = sorted(
        c.composition_entries()
            .map(|(g, f, h)| CompositeEntry {
                g: name(g),
                f: name(f),
                result: name(h),
            })
            .collect(),
        |e| vec![e.g.clone(), e.f.clone()],
    );
    StructureDocument::new(Body::Category(CategoryDoc {
        objects: sorted_names(c.object_names()),
        morphisms,
        identities,
        composition,
    }))
}

fn tensor_document(c: &FinCategory, t: &TensorTable) -> TensorDoc {
    let obj = |a: Ob| c.object_name(a).to_string();
    let name = |f: Mor| c.morphism_name(f).to_string();
    let mut objects = Vec::new();
    for a in c.objects() {
        for b in c.objects() {
            objects.push(PairEntry {
                left: obj(a),
                right: obj(b),
                result: obj(t.ob(a, b)),
            });
        }
    }
    let mut morphisms = Vec::new();
    for f in c.morphisms() {
        for g in c.morphisms() {
            morphisms.push(PairEntry {
                left: name(f),
                right: name(g),
                result: name(t.mor(f, g)),
            });
        }
    }
    let key = |e: &PairEntry| vec![e.left.clone(), e.right.clone()];
    TensorDoc {
        objects: sorted(objects, key),
        morphisms: sorted(morphisms, key),
    }
}

fn component_entries(c: &FinCategory, family: &NatFamily) -> Vec<ComponentEntry> {
    let entries = (0..family.components().len())
        .map(|p| ComponentEntry {
            at: family.index_of(p).into_iter().map(|a| c.object_name(a).to_string()).collect(),
            morphism: c.morphism_name(family.components()[p]).to_string(),
        })
        .collect();
    sorted(entries, |e| e.at.clone())
}

pub fn kfold_document(v: &KFoldStructure, base: Reference) -> StructureDocument {
    let c = v.base();
    StructureDocument::new(Body::Kfold(KFoldDoc {
        base,
        unit: c.object_name(v.unit()).to_string(),
        tensors: v
            .tensors()
            .iter()
            .enumerate()
            .map(|(i, t)| IndexedTensor {
                index: i + 1,
                table: tensor_document(c, t),
            })
            .collect(),
        associators: v
            .associators()
            .iter()
            .enumerate()
            .map(|(i, a)| AssociatorDoc {
                index: i + 1,
                components: component_entries(c, a),
            })
            .collect(),
        interchangers: v
            .interchangers()
            .iter()
            .map(|(&(i, j), eta)| InterchangerDoc {
                i,
                j,
                components: component_entries(c, eta),
            })
            .collect(),
    }))
}

pub fn symmetric_document(s: &SymmetricStructure, base: Reference) -> StructureDocument {
    let c = s.base();
    StructureDocument::new(Body::Symmetric(SymmetricDoc {
        base,
        unit: c.object_name(s.unit()).to_string(),
        tensor: tensor_document(c, s.tensor()),
        associator: component_entries(c, s.associator()),
        braiding: component_entries(c, s.braiding()),
    }))
}

pub fn enriched_document(cat: &EnrichedCategory, base: Reference) -> StructureDocument {
    let c = cat.base().base();
    let n = cat.num_objects();
    let obj = |a: usize| cat.object_name(a).to_string();
    let mor = |f: Mor| c.morphism_name(f).to_string();
    let mut homs = Vec::new();
    let mut composition = Vec::new();
    for a in 0..n {
        for b in 0..n {
            homs.push(HomEntry {
                from: obj(a),
                to: obj(b),
                object: c.object_name(cat.hom(a, b)).to_string(),
            });
            for d in 0..n {
                composition.push(ComponentEntry {
                    at: vec![obj(a), obj(b), obj(d)],
                    morphism: mor(cat.comp(a, b, d)),
                });
            }
        }
    }
    let identities = (0..n)
        .map(|a| IdentityEntry {
            object: obj(a),
            morphism: mor(cat.ident(a)),
        })
        .collect();
    StructureDocument::new(Body::Enriched(EnrichedDoc {
        name: cat.name().to_string(),
        base,
        objects: sorted_names(cat.object_names()),
        homs: sorted(homs, |h| vec![h.from.clone(), h.to.clone()]),
        composition: sorted(composition, |e| e.at.clone()),
        identities: sorted(identities, |e| vec![e.object.clone()]),
    }))
}

fn functor_tables(t: &EnrichedFunctor) -> FunctorTables {
    let (s, g) = (t.source(), t.target());
    let c = s.base().base();
    let n = s.num_objects();
    let object_map = (0..n)
        .map(|a| ImageEntry {
            object: s.object_name(a).to_string(),
            image: g.object_name(t.map_object(a)).to_string(),
        })
        .collect();
    let components = (0..n * n)
        .map(|p| ArrowEntry {
            from: s.object_name(p / n).to_string(),
            to: s.object_name(p % n).to_string(),
            morphism: c.morphism_name(t.component(p / n, p % n)).to_string(),
        })
        .collect();
    FunctorTables {
        object_map: sorted(object_map, |e| vec![e.object.clone()]),
        components: sorted(components, |e| vec![e.from.clone(), e.to.clone()]),
    }
}

pub fn functor_document(t: &EnrichedFunctor, source: Reference, target: Reference) -> StructureDocument {
    StructureDocument::new(Body::EnrichedFunctor(FunctorDoc {
        source,
        target,
        tables: functor_tables(t),
    }))
}

/// Hom categories are written inline, each referring to `base`.
pub fn v2_document(w: &V2Category, base: Reference) -> StructureDocument {
    let n = w.num_objects();
    let obj = |u: usize| w.object_name(u).to_string();
    let mut homs = Vec::new();
    let mut composition = Vec::new();
    for u in 0..n {
        for v in 0..n {
            homs.push(V2HomEntry {
                from: obj(u),
                to: obj(v),
                category: Reference::inline(enriched_document(w.hom(u, v), base.clone())),
            });
            for x in 0..n {
                composition.push(V2CompositeEntry {
                    at: vec![obj(u), obj(v), obj(x)],
                    functor: functor_tables(w.comp(u, v, x)),
                });
            }
        }
    }
    let identities = (0..n)
        .map(|u| V2IdentityEntry {
            object: obj(u),
            functor: functor_tables(w.ident(u)),
        })
        .collect();
    StructureDocument::new(Body::V2category(V2Doc {
        name: w.name().to_string(),
        base,
        objects: sorted_names(w.object_names()),
        homs: sorted(homs, |h| vec![h.from.clone(), h.to.clone()]),
        composition: sorted(composition, |e| e.at.clone()),
        identities: sorted(identities, |e| vec![e.object.clone()]),
    }))
}

/// The product `a ⊗^(1)_i b` as a document over `base`, as emitted by the
/// `deloop` command.
pub fn product_document(a: &EnrichedCategory, b: &EnrichedCategory, i: usize, base: Reference) -> Result<StructureDocument> {
    Ok(enriched_document(&tensor_enriched(a, b, i)?, base))
}

/// The unit category `ℐ` over `v` as a document.
pub fn unit_document(v: &Arc<KFoldStructure>, base: Reference) -> StructureDocument {
    enriched_document(&unit_category(v), base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn reload(doc: &StructureDocument, dir: &Path) -> Structure {
        let text = doc.to_json();
        let parsed = StructureDocument::parse(&text, "<memory>").unwrap();
        Loader::new().load_document(&parsed, &text, "<memory>", dir).unwrap()
    }

    #[test]
    fn inline_sign_kfold_round_trips() {
        let v = corpus::sign_kfold(3);
        let base = Reference::inline(category_document(v.base()));
        let doc = kfold_document(&v, base.clone());
        let Structure::KFold(back) = reload(&doc, Path::new(".")) else { panic!("kind") };
        assert_eq!(kfold_document(&back, base).to_json(), doc.to_json());
    }

    #[test]
    fn enriched_over_inline_base_round_trips() {
        let t = corpus::twisted_category();
        let v = t.base();
        let base = Reference::inline(kfold_document(v, Reference::inline(category_document(v.base()))));
        let doc = enriched_document(&t, base.clone());
        let Structure::Enriched(back) = reload(&doc, Path::new(".")) else { panic!("kind") };
        assert_eq!(enriched_document(&back, base).to_json(), doc.to_json());
    }

    #[test]
    fn omitted_identity_composites_are_implied() {
        let text = r#"{
  "format_version": 1,
  "kind": "category",
  "objects": ["a", "b"],
  "morphisms": [
    {"id": "1a", "dom": "a", "cod": "a"},
    {"id": "1b", "dom": "b", "cod": "b"},
    {"id": "f", "dom": "a", "cod": "b"}
  ],
  "identities": [{"object": "a", "morphism": "1a"}, {"object": "b", "morphism": "1b"}],
  "composition": []
}"#;
        let doc = StructureDocument::parse(text, "arrow.json").unwrap();
        let Structure::Category(c) = Loader::new().load_document(&doc, text, "arrow.json", Path::new(".")).unwrap() else {
            panic!("kind")
        };
        let f = c.morphism("f").unwrap();
        assert_eq!(c.compose(c.identity(Ob(1)), f).unwrap(), f);
    }

    #[test]
    fn unknown_ids_are_located() {
        let text = "{\n  \"format_version\": 1,\n  \"kind\": \"category\",\n  \"objects\": [\"a\"],\n  \"morphisms\": [\n    {\"id\": \"1\", \"dom\": \"a\", \"cod\": \"zz\"}\n  ],\n  \"identities\": [],\n  \"composition\": []\n}\n";
        let doc = StructureDocument::parse(text, "bad.json").unwrap();
        let err = Loader::new().load_document(&doc, text, "bad.json", Path::new(".")).unwrap_err();
        match err {
            Error::Parse { file, line, message, .. } => {
                assert_eq!(file, "bad.json");
                assert_eq!(line, 6);
                assert!(message.contains("zz"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = StructureDocument::parse("{\n  \"format_version\": 1,\n  oops\n}", "x.json").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn missing_entries_are_reported() {
        let v = corpus::sign_kfold(2);
        let mut doc = kfold_document(&v, Reference::inline(category_document(v.base())));
        if let Body::Kfold(k) = &mut doc.body {
            k.interchangers[0].components.pop();
        }
        let text = doc.to_json();
        let err = Loader::new().load_document(&doc, &text, "k.json", Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("missing interchanger entry"), "{err}");
    }
}
