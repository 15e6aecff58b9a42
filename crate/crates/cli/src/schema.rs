//! The on-disk document format: one JSON document per file, with a `kind`
//! discriminator and a `schema` version.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub const KINDS: [&str; 10] = [
    "category",
    "space",
    "topology",
    "presheaf",
    "group-sheaf",
    "action",
    "cocycle",
    "formula",
    "diagram",
    "functor",
];

/// Fields shared by every document, read before the kind-specific payload.
#[derive(Clone, Debug, Deserialize)]
pub struct Header {
    pub schema: u32,
    pub kind: String,
    pub name: String,
}

/// Element maps such as restrictions: arrow → (element → image).
pub type ElementMaps = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// Objects, non-identity morphisms and composites `[g, f, g∘f]`.
/// Every object gets an identity named `id_<object>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compose: Vec<(String, String, String)>,
}

/// A finite space given by its opens or by a subbasis, with optional
/// display names for opens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subbasis: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub names: BTreeMap<String, Vec<String>>,
}

/// Covering families per object. Each family generates a sieve; with
/// `saturate` the smallest topology containing them is taken instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub category: String,
    pub covers: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub saturate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PresheafConstruction {
    Terminal,
    Empty,
    Constant { values: Vec<String> },
    ConstantOnNonempty { values: Vec<String> },
    LocallyConstant { values: Vec<String> },
    Representable { object: String },
    Omega,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub site: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrictions: Option<ElementMaps>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<PresheafConstruction>,
}

/// `ℤ/n`, or elements with a multiplication table of labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupSheafShape {
    LocallyConstant,
    Constant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSheafDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub site: String,
    pub group: GroupSpec,
    pub sheaf: GroupSheafShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ActionConstruction {
    /// The group acting on itself.
    Trivial,
    /// The torsor glued from a cocycle.
    Glue { cocycle: String },
    /// `table[object][element][group element] = element · group element`.
    Explicit {
        space: String,
        table: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub group: String,
    pub construction: ActionConstruction,
}

/// Entries `[U_i, U_j, g_ij]`; missing diagonal entries are units and a
/// missing `g_ji` is the inverse of `g_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub group: String,
    pub target: String,
    pub members: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredicateSpec {
    pub sort: String,
    pub members: BTreeMap<String, Vec<String>>,
}

/// A formula in prefix syntax together with the structure it is read in:
/// sorts (presheaf or action documents), predicates and a typed context.
/// `binders` lists the variables quantifiers may use when generating a corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub site: String,
    pub sorts: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub predicates: BTreeMap<String, PredicateSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub context: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub binders: Vec<(String, String)>,
    pub formula: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DiagramConstruction {
    TwoAdicTower { length: usize },
    InclusionChain { length: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<ElementMaps>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<DiagramConstruction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub schema: u32,
    pub kind: String,
    pub name: String,
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Category(CategoryDoc),
    Space(SpaceDoc),
    Topology(TopologyDoc),
    Presheaf(PresheafDoc),
    GroupSheaf(GroupSheafDoc),
    Action(ActionDoc),
    Cocycle(CocycleDoc),
    Formula(FormulaDoc),
    Diagram(DiagramDoc),
    Functor(FunctorDoc),
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Category(d) => &d.name,
            Document::Space(d) => &d.name,
            Document::Topology(d) => &d.name,
            Document::Presheaf(d) => &d.name,
            Document::GroupSheaf(d) => &d.name,
            Document::Action(d) => &d.name,
            Document::Cocycle(d) => &d.name,
            Document::Formula(d) => &d.name,
            Document::Diagram(d) => &d.name,
            Document::Functor(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Space(_) => "space",
            Document::Topology(_) => "topology",
            Document::Presheaf(_) => "presheaf",
            Document::GroupSheaf(_) => "group-sheaf",
            Document::Action(_) => "action",
            Document::Cocycle(_) => "cocycle",
            Document::Formula(_) => "formula",
            Document::Diagram(_) => "diagram",
            Document::Functor(_) => "functor",
        }
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_canonical(&self) -> String {
        let text = match self {
            Document::Category(d) => serde_json::to_string_pretty(d),
            Document::Space(d) => serde_json::to_string_pretty(d),
            Document::Topology(d) => serde_json::to_string_pretty(d),
            Document::Presheaf(d) => serde_json::to_string_pretty(d),
            Document::GroupSheaf(d) => serde_json::to_string_pretty(d),
            Document::Action(d) => serde_json::to_string_pretty(d),
            Document::Cocycle(d) => serde_json::to_string_pretty(d),
            Document::Formula(d) => serde_json::to_string_pretty(d),
            Document::Diagram(d) => serde_json::to_string_pretty(d),
            Document::Functor(d) => serde_json::to_string_pretty(d),
        };
        text.expect("documents serialize") + "\n"
    }
}
