//! Workspace documents: one JSON file per carrier.
//!
//! Subset masks use bit `i` for element `i` of `space`. Anywhere a subset is
//! expected, either a mask or a list of labels is accepted.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use nearspace::descriptive::{descriptive_proximity, ProbeTable};
use nearspace::enumeration::point_graph_relation;
use nearspace::groups::FiniteGroup;
use nearspace::{
    product_proximity, subspace_proximity, validate_partition, FiniteSpace, Nearness,
    ProximityRelation, RectangleRelation, SpaceMap, Subset,
};
use serde::{Deserialize, Serialize};

/// A subset written as a mask or as a list of labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubsetRef {
    Mask(u32),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "encoding", rename_all = "lowercase", deny_unknown_fields)]
pub enum RelationSpec {
    /// Near iff the subsets meet.
    Discrete,
    /// Near iff both are nonempty.
    Coarse,
    /// Near iff the gap distance is zero; `matrix` must be a pseudometric.
    Metric { matrix: Vec<Vec<f64>> },
    /// Near iff the description sets meet.
    Descriptive { probes: String },
    /// Exactly the listed ordered pairs are near.
    Explicit {
        near: Vec<(SubsetRef, SubsetRef)>,
        /// Add the mirror of every listed pair; a warning is emitted when
        /// this changes the table.
        #[serde(default = "yes", skip_serializing_if = "is_true")]
        symmetrize: bool,
    },
    /// The Čech relation generated by a symmetric point graph: `A δ B` iff
    /// `A` and `B` meet or some edge joins them.
    Graph { edges: Vec<(String, String)> },
    /// Rectangle product of two named relations.
    Product { left: String, right: String },
    /// Restriction of a named relation to a subset, relabelled onto it.
    Subspace { parent: String, subset: SubsetRef },
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    /// `cayley[a][b]` is the index of `a·b`.
    pub cayley: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSpec {
    pub arity: usize,
    /// One description vector per element.
    pub values: Vec<Vec<i64>>,
}

/// The raw document as written.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub space: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub relations: BTreeMap<String, RelationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub probes: BTreeMap<String, ProbeSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<SubsetRef>>,
}

/// A rejected document, with the place it went wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError {
    /// `line L column C` for syntax and schema errors, otherwise a field
    /// path such as `relations.e.near[2]`.
    pub location: String,
    pub message: String,
}

impl DocError {
    fn at(location: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            location: location.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for DocError {}

/// A resolved relation. Products only answer on rectangles.
#[derive(Debug, Clone)]
pub enum Relation {
    Table(ProximityRelation),
    Rectangle(RectangleRelation),
}

impl Relation {
    pub fn space(&self) -> &FiniteSpace {
        match self {
            Relation::Table(r) => r.space(),
            Relation::Rectangle(r) => r.space(),
        }
    }

    pub fn nearness(&self) -> &dyn Nearness {
        match self {
            Relation::Table(r) => r,
            Relation::Rectangle(r) => r,
        }
    }

    pub fn table(&self) -> Option<&ProximityRelation> {
        match self {
            Relation::Table(r) => Some(r),
            Relation::Rectangle(_) => None,
        }
    }
}

/// A validated document with every reference resolved.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub document: Document,
    pub space: FiniteSpace,
    pub relations: BTreeMap<String, Relation>,
    pub group: Option<FiniteGroup>,
    pub probes: BTreeMap<String, ProbeTable>,
    pub maps: BTreeMap<String, SpaceMap>,
    pub partition: Option<Vec<Subset>>,
    /// Normalizations applied while loading.
    pub warnings: Vec<String>,
}

/// Parses JSON text into a raw document.
pub fn parse_document(text: &str) -> Result<Document, DocError> {
    serde_json::from_str(text).map_err(|e| {
        DocError::at(
            format!("line {} column {}", e.line(), e.column()),
            strip_position(&e),
        )
    })
}

/// serde_json appends " at line L column C"; the location is reported
/// separately.
fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(k) => s[..k].to_string(),
        None => s,
    }
}

/// Parses and validates in one step.
pub fn parse_workspace(text: &str) -> Result<Workspace, DocError> {
    Workspace::from_document(parse_document(text)?)
}

pub fn resolve_subset(space: &FiniteSpace, s: &SubsetRef, loc: &str) -> Result<Subset, DocError> {
    match s {
        SubsetRef::Mask(m) => space
            .check_subset(Subset(*m))
            .map_err(|e| DocError::at(loc, e)),
        SubsetRef::Labels(labels) => {
            let mut out = Subset::EMPTY;
            for l in labels {
                let i = space
                    .index_of(l)
                    .ok_or_else(|| DocError::at(loc, format!("dangling label {l:?}")))?;
                out = out.union(Subset::singleton(i));
            }
            Ok(out)
        }
    }
}

/// Subset syntax used on the command line: a mask such as `5`, or labels
/// separated by commas such as `a,c`. `{}` is the empty set.
pub fn parse_subset_arg(space: &FiniteSpace, arg: &str, flag: &str) -> Result<Subset, DocError> {
    let arg = arg.trim();
    let r = if let Ok(m) = arg.parse::<u32>() {
        SubsetRef::Mask(m)
    } else {
        let inner = arg.trim_start_matches('{').trim_end_matches('}');
        SubsetRef::Labels(
            inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect(),
        )
    };
    resolve_subset(space, &r, flag)
}

impl Workspace {
    pub fn from_document(doc: Document) -> Result<Self, DocError> {
        let space =
            FiniteSpace::new(doc.space.iter().cloned()).map_err(|e| DocError::at("space", e))?;
        let n = space.size();

        let group = match &doc.group {
            None => None,
            Some(spec) => Some(resolve_group(&space, spec)?),
        };

        let mut probes = BTreeMap::new();
        for (name, p) in &doc.probes {
            let t = ProbeTable::new(space.clone(), p.arity, p.values.clone())
                .map_err(|e| DocError::at(format!("probes.{name}"), e))?;
            probes.insert(name.clone(), t);
        }

        let mut maps = BTreeMap::new();
        for (name, images) in &doc.maps {
            if let Some(k) = images.iter().position(|&i| i >= n) {
                return Err(DocError::at(
                    format!("maps.{name}[{k}]"),
                    format!("image {} out of range for a carrier of size {n}", images[k]),
                ));
            }
            let m = SpaceMap::new(space.clone(), space.clone(), images.clone())
                .map_err(|e| DocError::at(format!("maps.{name}"), e))?;
            maps.insert(name.clone(), m);
        }

        let partition = match &doc.partition {
            None => None,
            Some(blocks) => {
                let blocks = blocks
                    .iter()
                    .enumerate()
                    .map(|(k, b)| resolve_subset(&space, b, &format!("partition[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                validate_partition(&space, &blocks).map_err(|e| DocError::at("partition", e))?;
                Some(blocks)
            }
        };

        let mut ws = Workspace {
            space,
            relations: BTreeMap::new(),
            group,
            probes,
            maps,
            partition,
            warnings: Vec::new(),
            document: doc,
        };
        let names: Vec<String> = ws.document.relations.keys().cloned().collect();
        for name in names {
            ws.resolve_relation(&name, &mut Vec::new())?;
        }
        Ok(ws)
    }

    /// Resolves `name` and its dependencies; `stack` holds the names being
    /// resolved, for cycle detection.
    fn resolve_relation(&mut self, name: &str, stack: &mut Vec<String>) -> Result<(), DocError> {
        if self.relations.contains_key(name) {
            return Ok(());
        }
        let loc = format!("relations.{name}");
        if stack.iter().any(|s| s == name) {
            stack.push(name.to_string());
            return Err(DocError::at(
                loc,
                format!("reference cycle {}", stack.join(" -> ")),
            ));
        }
        let spec = self.document.relations[name].clone();
        let mut dependency = |ws: &mut Self, field: &str, dep: &str| -> Result<(), DocError> {
            if !ws.document.relations.contains_key(dep) {
                return Err(DocError::at(
                    format!("{loc}.{field}"),
                    format!("unknown relation {dep:?}"),
                ));
            }
            stack.push(name.to_string());
            let r = ws.resolve_relation(dep, stack);
            stack.pop();
            r
        };
        let y = self.space.clone();
        let rel = match &spec {
            RelationSpec::Discrete => Relation::Table(ProximityRelation::discrete(y)),
            RelationSpec::Coarse => Relation::Table(ProximityRelation::coarse(y)),
            RelationSpec::Metric { matrix } => Relation::Table(
                ProximityRelation::metric(y, matrix)
                    .map_err(|e| DocError::at(format!("{loc}.matrix"), e))?,
            ),
            RelationSpec::Descriptive { probes } => {
                let p = self.probes.get(probes).ok_or_else(|| {
                    DocError::at(
                        format!("{loc}.probes"),
                        format!("unknown probe table {probes:?}"),
                    )
                })?;
                Relation::Table(descriptive_proximity(p))
            }
            RelationSpec::Explicit { near, symmetrize } => {
                let mut pairs = BTreeSet::new();
                for (k, (a, b)) in near.iter().enumerate() {
                    let at = format!("{loc}.near[{k}]");
                    pairs.insert((resolve_subset(&y, a, &at)?, resolve_subset(&y, b, &at)?));
                }
                if *symmetrize {
                    let mirrored: BTreeSet<_> = pairs.iter().map(|&(a, b)| (b, a)).collect();
                    let added = mirrored.difference(&pairs).count();
                    if added > 0 {
                        self.warnings.push(format!(
                            "{loc}: asymmetric input; symmetric closure added {added} pair(s)"
                        ));
                    }
                    pairs.extend(mirrored);
                }
                Relation::Table(
                    ProximityRelation::from_near_pairs(y, pairs)
                        .map_err(|e| DocError::at(&loc, e))?,
                )
            }
            RelationSpec::Graph { edges } => {
                let mut adj = vec![Subset::EMPTY; y.size()];
                for (k, (a, b)) in edges.iter().enumerate() {
                    let at = format!("{loc}.edges[{k}]");
                    let idx = |l: &String| {
                        y.index_of(l)
                            .ok_or_else(|| DocError::at(&at, format!("dangling label {l:?}")))
                    };
                    let (i, j) = (idx(a)?, idx(b)?);
                    adj[i] = adj[i].union(Subset::singleton(j));
                    adj[j] = adj[j].union(Subset::singleton(i));
                }
                Relation::Table(point_graph_relation(y, &adj))
            }
            RelationSpec::Product { left, right } => {
                dependency(self, "left", left)?;
                dependency(self, "right", right)?;
                let table = |ws: &Self, field: &str, dep: &str| {
                    ws.relations[dep].table().cloned().ok_or_else(|| {
                        DocError::at(
                            format!("{loc}.{field}"),
                            format!("relation {dep:?} is itself a product"),
                        )
                    })
                };
                let (l, r) = (table(self, "left", left)?, table(self, "right", right)?);
                Relation::Rectangle(product_proximity(&l, &r).map_err(|e| DocError::at(&loc, e))?)
            }
            RelationSpec::Subspace { parent, subset } => {
                dependency(self, "parent", parent)?;
                let p = self.relations[parent.as_str()]
                    .table()
                    .cloned()
                    .ok_or_else(|| {
                        DocError::at(
                            format!("{loc}.parent"),
                            format!("relation {parent:?} is a product"),
                        )
                    })?;
                let v = resolve_subset(p.space(), subset, &format!("{loc}.subset"))?;
                Relation::Table(
                    subspace_proximity(&p, v)
                        .map_err(|e| DocError::at(format!("{loc}.subset"), e))?,
                )
            }
        };
        self.relations.insert(name.to_string(), rel);
        Ok(())
    }

    pub fn relation(&self, name: Option<&str>) -> Result<(&str, &Relation), String> {
        pick(&self.relations, name, "relation", "relations", "--relation")
    }

    pub fn probe_table(&self, name: Option<&str>) -> Result<(&str, &ProbeTable), String> {
        pick(&self.probes, name, "probe table", "probes", "--probes")
    }

    pub fn map(&self, name: &str) -> Result<&SpaceMap, String> {
        self.maps
            .get(name)
            .ok_or_else(|| format!("unknown map {name:?}"))
    }

    pub fn group(&self) -> Result<&FiniteGroup, String> {
        self.group
            .as_ref()
            .ok_or_else(|| "this verb needs a group section".to_string())
    }
}

/// Looks up `name`, or the only entry when no name is given.
fn pick<'a, T>(
    items: &'a BTreeMap<String, T>,
    name: Option<&str>,
    what: &str,
    section: &str,
    flag: &str,
) -> Result<(&'a str, &'a T), String> {
    match name {
        Some(n) => items
            .get_key_value(n)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| format!("unknown {what} {n:?}")),
        None => match items.len() {
            0 => Err(format!("this verb needs a {section} section")),
            1 => items
                .iter()
                .next()
                .map(|(k, v)| (k.as_str(), v))
                .ok_or_else(String::new),
            _ => Err(format!(
                "several {section} are defined; choose one with {flag}"
            )),
        },
    }
}

fn resolve_group(space: &FiniteSpace, spec: &GroupSpec) -> Result<FiniteGroup, DocError> {
    let n = space.size();
    if spec.cayley.len() != n {
        return Err(DocError::at(
            "group.cayley",
            format!("{} rows for a carrier of size {n}", spec.cayley.len()),
        ));
    }
    for (i, row) in spec.cayley.iter().enumerate() {
        if row.len() < n {
            return Err(DocError::at(
                format!("group.cayley[{i}][{}]", row.len()),
                format!("row {i} is missing the entry at position {}", row.len()),
            ));
        }
        if row.len() > n {
            return Err(DocError::at(
                format!("group.cayley[{i}]"),
                format!("row {i} has {} entries, expected {n}", row.len()),
            ));
        }
        if let Some(j) = row.iter().position(|&v| v >= n) {
            return Err(DocError::at(
                format!("group.cayley[{i}][{j}]"),
                format!("entry {} out of range for a carrier of size {n}", row[j]),
            ));
        }
    }
    let g = match spec.identity {
        Some(e) if e >= n => {
            return Err(DocError::at(
                "group.identity",
                format!("index {e} out of range"),
            ));
        }
        Some(e) => FiniteGroup::with_identity(space.clone(), spec.cayley.clone(), e),
        None => FiniteGroup::new(space.clone(), spec.cayley.clone()),
    };
    g.map_err(|e| DocError::at("group", e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> DocError {
        parse_workspace(text).unwrap_err()
    }

    #[test]
    fn minimal_discrete_document() {
        let ws =
            parse_workspace(r#"{"space":["a","b"],"relations":{"d":{"encoding":"discrete"}}}"#)
                .unwrap();
        let r = ws.relations["d"].table().unwrap();
        assert_eq!(r.table_bits().len(), 16);
        assert!(ws.warnings.is_empty());
    }

    #[test]
    fn explicit_pairs_are_symmetrized_with_a_warning() {
        let ws = parse_workspace(
            r#"{"space":["a","b"],"relations":{"e":{"encoding":"explicit","near":[[1,3],[["a"],["a","b"]]]}}}"#,
        )
        .unwrap();
        let r = ws.relations["e"].table().unwrap();
        assert!(r.near(Subset(3), Subset(1)));
        assert_eq!(r.near_pair_count(), 2);
        assert_eq!(ws.warnings.len(), 1);
    }

    #[test]
    fn symmetric_explicit_input_is_not_flagged() {
        let ws = parse_workspace(
            r#"{"space":["a","b"],"relations":{"e":{"encoding":"explicit","near":[[1,2],[2,1]]}}}"#,
        )
        .unwrap();
        assert!(ws.warnings.is_empty());
    }

    #[test]
    fn short_cayley_row_names_row_and_position() {
        let e = err(r#"{"space":["0","1"],"group":{"cayley":[[0,1],[1]]}}"#);
        assert_eq!(e.location, "group.cayley[1][1]");
        assert!(
            e.message.contains("row 1") && e.message.contains("position 1"),
            "{e}"
        );
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let e = err("{\"space\": [\"a\",\n  \"b\" \"c\"]}");
        assert_eq!(e.location, "line 2 column 7");
        let e = err(r#"{"space":["a"],"relations":{"x":{"encoding":"fuzzy"}}}"#);
        assert!(e.location.starts_with("line 1"), "{e}");
        assert!(e.message.contains("fuzzy"), "{e}");
        let e = err(r#"{"space":["a"],"colour":1}"#);
        assert!(e.message.contains("colour"), "{e}");
    }

    #[test]
    fn dangling_labels_and_masks() {
        let e = err(
            r#"{"space":["a","b"],"relations":{"e":{"encoding":"explicit","near":[[1,1],[["z"],1]]}}}"#,
        );
        assert_eq!(e.location, "relations.e.near[1]");
        assert!(e.message.contains("\"z\""));
        let e =
            err(r#"{"space":["a","b"],"relations":{"e":{"encoding":"explicit","near":[[4,1]]}}}"#);
        assert_eq!(e.location, "relations.e.near[0]");
        let e = err(r#"{"space":["a","b"],"maps":{"f":[0,2]}}"#);
        assert_eq!(e.location, "maps.f[1]");
        let e = err(
            r#"{"space":["a","b"],"relations":{"g":{"encoding":"graph","edges":[["a","q"]]}}}"#,
        );
        assert_eq!(e.location, "relations.g.edges[0]");
    }

    #[test]
    fn references_resolve_and_cycles_are_caught() {
        let ws = parse_workspace(
            r#"{"space":["a","b","c"],"relations":{
                "s":{"encoding":"subspace","parent":"d","subset":["a","c"]},
                "d":{"encoding":"discrete"},
                "p":{"encoding":"product","left":"d","right":"s"}}}"#,
        )
        .unwrap();
        assert_eq!(ws.relations["s"].space().labels(), ["a", "c"]);
        assert_eq!(ws.relations["p"].space().size(), 6);
        let e = err(r#"{"space":["a"],"relations":{
                "x":{"encoding":"subspace","parent":"y","subset":1},
                "y":{"encoding":"subspace","parent":"x","subset":1}}}"#);
        assert!(e.message.contains("cycle"), "{e}");
        let e =
            err(r#"{"space":["a"],"relations":{"x":{"encoding":"descriptive","probes":"phi"}}}"#);
        assert_eq!(e.location, "relations.x.probes");
    }

    #[test]
    fn group_identity_must_match() {
        assert!(parse_workspace(
            r#"{"space":["e","x"],"group":{"cayley":[[0,1],[1,0]],"identity":0}}"#
        )
        .is_ok());
        let e = err(r#"{"space":["e","x"],"group":{"cayley":[[0,1],[1,0]],"identity":1}}"#);
        assert_eq!(e.location, "group");
    }

    #[test]
    fn subset_arguments() {
        let y = FiniteSpace::lettered(3).unwrap();
        assert_eq!(parse_subset_arg(&y, "5", "--subset").unwrap(), Subset(5));
        assert_eq!(parse_subset_arg(&y, "a,c", "--subset").unwrap(), Subset(5));
        assert_eq!(parse_subset_arg(&y, "{b}", "--subset").unwrap(), Subset(2));
        assert_eq!(parse_subset_arg(&y, "{}", "--subset").unwrap(), Subset(0));
        assert!(parse_subset_arg(&y, "8", "--subset").is_err());
        assert!(parse_subset_arg(&y, "a,x", "--subset").is_err());
    }
}
