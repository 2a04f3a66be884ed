//! Verbs. Each one turns a workspace (or a size, for the sweeps) into a
//! [`Report`]. Input problems become [`InputError`]s, never failed items.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nearspace::descriptive::{
    check_descriptive_ef, check_descriptive_lodato, check_dpcont, mapping_space_relation,
};
use nearspace::enumeration::{
    enumerate_relations, fuzz_theorem, mine_separating_examples, Counterexample, FuzzScope,
    TheoremId,
};
use nearspace::groups::{
    check_descriptive_proximal_group, check_proximal_group_with, check_proximal_homomorphism,
    check_translations, first_iso_harness, hom_criterion_check, quotient_proximal_group,
    second_iso_harness, third_iso_harness, FiniteGroup, IsoReport, ProximalGroupReport,
};
use nearspace::{
    check_class, check_class_on, check_kuratowski, check_pcont, check_proximal_isomorphism,
    induced_topology, product_space, quotient_proximity, Axiom, AxiomClass, Error, FiniteSpace,
    ProximityRelation, Subset,
};

use crate::document::{parse_subset_arg, parse_workspace, Relation, Workspace};
use crate::report::{Format, Report, WitnessOut};

/// Verbs that read a document refuse carriers larger than this unless
/// `--max-n` raises it.
pub const DEFAULT_MAX_N: usize = 5;

#[derive(Debug, Parser)]
#[command(
    name = "nearspace",
    version,
    about = "Checks finite proximity spaces and proximal groups"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest document carrier that exhaustive scans accept.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Cech,
    Lodato,
    Ef,
    LodatoEf,
}

impl From<ClassArg> for AxiomClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Cech => AxiomClass::Cech,
            ClassArg::Lodato => AxiomClass::Lodato,
            ClassArg::Ef => AxiomClass::Efremovic,
            ClassArg::LodatoEf => AxiomClass::LodatoEfremovic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    First,
    Second,
    Third,
}

/// The document argument; `-` reads standard input.
#[derive(Debug, Args)]
pub struct Doc {
    pub file: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Proximity axioms of one relation.
    CheckAxioms {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        relation: Option<String>,
        #[arg(long, value_enum, default_value_t = ClassArg::Cech)]
        class: ClassArg,
        /// Also check the closure operator (K1-K4).
        #[arg(long)]
        kuratowski: bool,
    },
    /// Closure operator and the closed and open sets it induces.
    Topology {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        relation: Option<String>,
    },
    /// Proximal continuity of a map between two relations.
    Pcont {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        map: String,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        /// Also require a proximal isomorphism.
        #[arg(long)]
        iso: bool,
    },
    /// Whether the group with a relation is a proximal group.
    GroupCheck {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        relation: Option<String>,
        #[arg(long, value_enum, default_value_t = ClassArg::Cech)]
        class: ClassArg,
    },
    /// Every left and right translation as a proximal isomorphism.
    Translations {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        relation: Option<String>,
    },
    /// A subgroup with the subspace relation.
    Subgroup {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        relation: Option<String>,
        /// Mask or comma-separated labels.
        #[arg(long)]
        subset: String,
    },
    /// Direct product of the group with itself under two relations.
    Product {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// An endomorphism of the group as a proximal homomorphism.
    HomCheck {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        map: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Also require a proximal isomorphism.
        #[arg(long)]
        iso: bool,
        /// Check the identity-neighbourhood criterion against pcont.
        #[arg(long)]
        criterion: bool,
    },
    /// Quotient by a normal subgroup, or by the document partition.
    Quotient {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        relation: Option<String>,
        /// Normal subgroup; without it the partition section is used.
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, value_enum, default_value_t = ClassArg::Cech)]
        class: ClassArg,
    },
    /// Canonical maps of the isomorphism theorems.
    IsoTheorems {
        #[command(flatten)]
        doc: Doc,
        #[arg(long, value_enum)]
        which: Which,
        /// first: the homomorphism and its two relations.
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        /// second and third: the relation on the group.
        #[arg(long)]
        relation: Option<String>,
        /// second: the subgroup H.
        #[arg(long)]
        h: Option<String>,
        /// second and third: the normal subgroup N.
        #[arg(long)]
        n: Option<String>,
        /// third: the normal subgroup K containing N.
        #[arg(long)]
        k: Option<String>,
    },
    /// Descriptive axioms of a probe table.
    DescriptiveCheck {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        probes: Option<String>,
        /// Check DEF instead of DL5.
        #[arg(long)]
        ef: bool,
        /// Also check the group with the descriptive relation.
        #[arg(long)]
        group: bool,
    },
    /// Nearness of two families of dpcont maps.
    MappingSpace {
        #[command(flatten)]
        doc: Doc,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        right: Vec<String>,
    },
    /// Counts (and optionally lists) the relations of a class on n points.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ClassArg::Cech)]
        class: ClassArg,
        /// List each relation by its point graph.
        #[arg(long)]
        list: bool,
    },
    /// Sweeps one statement over its scope.
    Fuzz {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        enumerated_order: Option<usize>,
        #[arg(long)]
        dc_order: Option<usize>,
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        /// Counterexamples to print.
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Class counts and minimal separating relations on n points.
    Census {
        #[arg(long)]
        n: usize,
    },
}

/// An input the verb cannot work with; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<String> for InputError {
    fn from(s: String) -> Self {
        InputError(s)
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Res<T> = Result<T, InputError>;

/// What a process run produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses arguments (including the program name) and runs the verb.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match run_command(&cli.command, cli.max_n, stdin) {
        Ok(report) => Outcome {
            stdout: report.render(cli.format),
            stderr: String::new(),
            code: report.exit_code(),
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 2,
        },
    }
}

fn load(doc: &Doc, max_n: usize, stdin: &mut dyn Read) -> Res<Workspace> {
    let text = if doc.file == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| format!("reading standard input: {e}"))?;
        s
    } else {
        std::fs::read_to_string(&doc.file).map_err(|e| format!("{}: {e}", doc.file))?
    };
    let ws = parse_workspace(&text).map_err(|e| format!("{}: {e}", doc.file))?;
    let n = ws.space.size();
    if n > max_n {
        return Err(InputError(format!(
            "carrier has {n} elements; exhaustive scans are capped at {max_n} (raise with --max-n)"
        )));
    }
    Ok(ws)
}

fn table<'a>(name: &str, rel: &'a Relation) -> Res<&'a ProximityRelation> {
    rel.table().ok_or_else(|| {
        InputError(format!(
            "relation {name:?} is a rectangle product; this verb needs a full table"
        ))
    })
}

/// The named (or only) relation, as a table on the group carrier.
fn group_relation<'a>(
    ws: &'a Workspace,
    name: Option<&str>,
) -> Res<(&'a FiniteGroup, &'a str, &'a ProximityRelation)> {
    let g = ws.group()?;
    let (name, rel) = ws.relation(name)?;
    let rel = table(name, rel)?;
    if rel.space() != g.space() {
        return Err(InputError(format!(
            "relation {name:?} is not on the group carrier"
        )));
    }
    Ok((g, name, rel))
}

fn subset(ws: &Workspace, arg: &str, flag: &str) -> Res<Subset> {
    parse_subset_arg(&ws.space, arg, flag).map_err(|e| InputError(e.to_string()))
}

fn describe(name: &str, rel: &Relation) -> String {
    match rel {
        Relation::Table(r) => format!(
            "relation {name} ({}, {} points)",
            r.provenance(),
            r.space().size()
        ),
        Relation::Rectangle(r) => format!(
            "relation {name} (product, {} points, rectangles only)",
            r.space().size()
        ),
    }
}

fn group_items(r: &mut Report, prefix: &str, rep: &ProximalGroupReport, space: &FiniteSpace) {
    r.axioms(prefix, &rep.is_proximity, space);
    r.verdict(format!("{prefix}MU1_PCONT"), &rep.mu1_pcont, space);
    r.verdict(format!("{prefix}MU2_PCONT"), &rep.mu2_pcont, space);
}

/// Witness for a group-level verdict that failed without a mask witness of
/// its own: the first failing component.
fn group_witness(rep: &ProximalGroupReport, space: &FiniteSpace) -> (WitnessOut, String) {
    if let Some((ax, w)) = rep.is_proximity.failures().next() {
        return (WitnessOut::of(space, w), format!("{ax} fails"));
    }
    for (name, v) in [("MU1_PCONT", &rep.mu1_pcont), ("MU2_PCONT", &rep.mu2_pcont)] {
        if let Some(w) = v.witness() {
            return (WitnessOut::of(space, w), format!("{name} fails"));
        }
    }
    unreachable!("a failed proximal group report has a failing component")
}

fn edges(rel: &ProximityRelation) -> String {
    let y = rel.space();
    let mut out = Vec::new();
    for i in 0..y.size() {
        for j in i + 1..y.size() {
            if rel.near(Subset::singleton(i), Subset::singleton(j)) {
                out.push(format!("{}-{}", y.label(i), y.label(j)));
            }
        }
    }
    if out.is_empty() {
        "no edges".into()
    } else {
        format!("edges {}", out.join(" "))
    }
}

fn iso_items(r: &mut Report, rep: &IsoReport) {
    let codomain = &rep.codomain;
    let images: Vec<String> = rep
        .map
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("{} -> {}", rep.domain.label(i), codomain.label(j)))
        .collect();
    r.info("map", images.join(", "));
    r.verdict("GROUP_ISOMORPHISM", &rep.group_isomorphism, &rep.domain);
    for (ax, v) in rep.proximal_isomorphism.iter() {
        // Inverse scans run over the codomain's subsets.
        let y = if ax == Axiom::InversePcont {
            codomain
        } else {
            &rep.domain
        };
        r.verdict(ax.name(), v, y);
    }
}

fn counterexample_witness(t: TheoremId, cx: &Counterexample) -> WitnessOut {
    let inst = &cx.instance;
    let Some((ax, w)) = &cx.axiom_witness else {
        return WitnessOut::new(None, &inst.subsets);
    };
    let space = match t {
        TheoremId::Translations
        | TheoremId::CompositionPcont
        | TheoremId::CechIsLodato
        | TheoremId::CechIsEf => inst.relations.first().map(|r| r.space()),
        TheoremId::HomCriterion => inst.groups.first().map(|g| g.space()),
        TheoremId::FirstIso if *ax == Axiom::InversePcont => inst.groups.get(1).map(|g| g.space()),
        _ => None,
    };
    WitnessOut::new(space, w.masks())
}

/// Runs one parsed verb.
pub fn run_command(cmd: &Command, max_n: usize, stdin: &mut dyn Read) -> Res<Report> {
    match cmd {
        Command::CheckAxioms {
            doc,
            relation,
            class,
            kuratowski,
        } => {
            let ws = load(doc, max_n, stdin)?;
            let (name, rel) = ws.relation(relation.as_deref())?;
            let class = AxiomClass::from(*class);
            let mut r = Report::new(
                "check-axioms",
                format!("{} class {}", describe(name, rel), class.name()),
            );
            r.warnings = ws.warnings.clone();
            let report = match rel {
                Relation::Table(t) => check_class(t, class),
                Relation::Rectangle(p) => check_class_on(p, class),
            };
            r.axioms("", &report, rel.space());
            if *kuratowski {
                let t = table(name, rel)?;
                r.axioms("", &check_kuratowski(t), t.space());
            }
            Ok(r)
        }
        Command::Topology { doc, relation } => {
            let ws = load(doc, max_n, stdin)?;
            let (name, rel) = ws.relation(relation.as_deref())?;
            let t = table(name, rel)?;
            let y = t.space();
            let top = induced_topology(t);
            let mut r = Report::new("topology", describe(name, rel));
            r.warnings = ws.warnings.clone();
            r.axioms("", &top.kuratowski, y);
            let list = |sets: &[Subset]| {
                sets.iter()
                    .map(|&s| y.format_subset(s))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            r.info("closed", list(&top.closed_sets));
            r.info("open", list(&top.open_sets));
            let verdict = match (top.kuratowski_ok, top.is_topology) {
                (false, _) => "undetermined: the closure is not a Kuratowski operator",
                (true, true) => "yes",
                (true, false) => "no",
            };
            r.info("topology", verdict);
            Ok(r)
        }
        Command::Pcont {
            doc,
            map,
            from,
            to,
            iso,
        } => {
            let ws = load(doc, max_n, stdin)?;
            let f = ws.map(map)?;
            let (fname, fr) = ws.relation(from.as_deref())?;
            let (tname, tr) = ws.relation(to.as_deref())?;
            let mut r = Report::new(
                "pcont",
                format!("map {map} from relation {fname} to relation {tname}"),
            );
            r.warnings = ws.warnings.clone();
            let report = if *iso {
                check_proximal_isomorphism(f, fr.nearness(), tr.nearness())?
            } else {
                check_pcont(f, fr.nearness(), tr.nearness())?
            };
            for (ax, v) in report.iter() {
                let y = if ax == Axiom::InversePcont {
                    tr.space()
                } else {
                    fr.space()
                };
                r.verdict(ax.name(), v, y);
            }
            Ok(r)
        }
        Command::GroupCheck {
            doc,
            relation,
            class,
        } => {
            let ws = load(doc, max_n, stdin)?;
            let (g, name, rel) = group_relation(&ws, relation.as_deref())?;
            let class = AxiomClass::from(*class);
            let rep = check_proximal_group_with(g, rel, class)?;
            let mut r = Report::new(
                "group-check",
                format!(
                    "group of order {} with relation {name} ({}) class {}",
                    g.order(),
                    rel.provenance(),
                    class.name()
                ),
            );
            r.warnings = ws.warnings.clone();
            group_items(&mut r, "", &rep, g.space());
            Ok(r)
        }
        Command::Translations { doc, relation } => {
            let ws = load(doc, max_n, stdin)?;
            let (g, name, rel) = group_relation(&ws, relation.as_deref())?;
            let t = check_translations(g, rel)?;
            let mut r = Report::new(
                "translations",
                format!("group of order {} with relation {name}", g.order()),
            );
            r.warnings = ws.warnings.clone();
            for (side, reps) in [("left", &t.left), ("right", &t.right)] {
                for (x, rep) in reps.iter().enumerate() {
                    let item = format!("{side}[{}]", g.space().label(x));
                    match rep.failures().next() {
                        None => r.pass(item),
                        Some((ax, w)) => r.fail(
                            item,
                            WitnessOut::of(g.space(), w),
                            Some(format!("{ax} fails")),
                        ),
                    };
                }
            }
            Ok(r)
        }
        Command::Subgroup {
            doc,
            relation,
            subset: s,
        } => {
            let ws = load(doc, max_n, stdin)?;
            let (g, name, rel) = group_relation(&ws, relation.as_deref())?;
            let h = subset(&ws, s, "--subset")?;
            let mut r = Report::new(
                "subgroup",
                format!(
                    "subset {} of the group with relation {name}",
                    g.space().format_subset(h)
                ),
            );
            r.warnings = ws.warnings.clone();
            if let Err(e) = g.check_subgroup(h) {
                r.fail(
                    "SUBGROUP",
                    WitnessOut::of(g.space(), &nearspace::Witness::of([h])),
                    Some(e.to_string()),
                );
                return Ok(r);
            }
            r.pass("SUBGROUP");
            let sub = g.subgroup(h)?;
            let rep = nearspace::groups::subgroup_proximal_group(g, rel, h)?;
            group_items(&mut r, "", &rep, sub.space());
            Ok(r)
        }
        Command::Product { doc, left, right } => {
            let ws = load(doc, max_n, stdin)?;
            let (g, lname, l) = group_relation(&ws, Some(left))?;
            let (_, rname, rr) = group_relation(&ws, Some(right))?;
            let mut r = Report::new(
                "product",
                format!(
                    "group of order {} squared with relations {lname} x {rname}",
                    g.order()
                ),
            );
            r.warnings = ws.warnings.clone();
            let mut factors_ok = true;
            for (side, rel) in [("left", l), ("right", rr)] {
                let rep = check_proximal_group_with(g, rel, AxiomClass::Cech)?;
                if rep.verdict {
                    r.pass(format!("{side}_factor"));
                } else {
                    factors_ok = false;
                    let (w, d) = group_witness(&rep, g.space());
                    r.fail(format!("{side}_factor"), w, Some(d));
                }
            }
            if factors_ok {
                let rep = nearspace::groups::product_proximal_group(g, l, g, rr)?;
                let y = product_space(g.space(), g.space())?;
                group_items(&mut r, "product.", &rep, &y);
            }
            Ok(r)
        }
        Command::HomCheck {
            doc,
            map,
            from,
            to,
            iso,
            criterion,
        } => {
            let ws = load(doc, max_n, stdin)?;
            let (g, _, r1) = group_relation(&ws, Some(from))?;
            let (_, _, r2) = group_relation(&ws, Some(to))?;
            let eta = ws.map(map)?;
            let mut r = Report::new(
                "hom-check",
                format!("map {map} from relation {from} to relation {to}"),
            );
            r.warnings = ws.warnings.clone();
            let y = g.space();
            if *criterion {
                let c = hom_criterion_check(eta, g, r1, g, r2)?;
                r.verdict("IDENTITY_CRITERION", &c.hypothesis, y);
                r.axioms("", &c.conclusion, y);
                return Ok(r);
            }
            let rep = check_proximal_homomorphism(eta, g, r1, g, r2)?;
            r.verdict("GROUP_HOM", &rep.group_hom, y);
            if *iso {
                r.axioms("", &rep.isomorphism, y);
            } else {
                r.axioms("", &rep.pcont, y);
            }
            Ok(r)
        }
        Command::Quotient {
            doc,
            relation,
            subset: s,
            class,
        } => {
            let ws = load(doc, max_n, stdin)?;
            let class = AxiomClass::from(*class);
            match s {
                Some(s) => {
                    let (g, name, rel) = group_relation(&ws, relation.as_deref())?;
                    let n = subset(&ws, s, "--subset")?;
                    let mut r = Report::new(
                        "quotient",
                        format!(
                            "group by {} with relation {name}",
                            g.space().format_subset(n)
                        ),
                    );
                    r.warnings = ws.warnings.clone();
                    match g.check_normal(n) {
                        Err(Error::NotNormal { conjugator }) => {
                            let w = [n, Subset::singleton(conjugator)];
                            r.fail(
                                "NORMAL",
                                WitnessOut::new(Some(g.space()), &w),
                                Some("conjugation moves the subgroup".into()),
                            );
                            return Ok(r);
                        }
                        Err(e) => return Err(e.into()),
                        Ok(()) => r.pass("NORMAL"),
                    };
                    let q = quotient_proximal_group(g, rel, n)?;
                    r.info("cosets", q.group.space().labels().join(" "));
                    let rep = check_proximal_group_with(&q.group, &q.relation, class)?;
                    group_items(&mut r, "", &rep, q.group.space());
                    Ok(r)
                }
                None => {
                    let (name, rel) = ws.relation(relation.as_deref())?;
                    let t = table(name, rel)?;
                    let blocks = ws.partition.as_ref().ok_or_else(|| {
                        InputError("this verb needs --subset or a partition section".into())
                    })?;
                    let q = quotient_proximity(t, blocks)?;
                    let mut r = Report::new(
                        "quotient",
                        format!("relation {name} by the partition class {}", class.name()),
                    );
                    r.warnings = ws.warnings.clone();
                    r.info("blocks", q.space().labels().join(" "));
                    r.axioms("", &check_class(&q, class), q.space());
                    Ok(r)
                }
            }
        }
        Command::IsoTheorems {
            doc,
            which,
            map,
            from,
            to,
            relation,
            h,
            n,
            k,
        } => {
            let ws = load(doc, max_n, stdin)?;
            let need = |v: &Option<String>, flag: &str| {
                v.clone().ok_or_else(|| {
                    InputError(format!("--which {which:?} needs {flag}").to_lowercase())
                })
            };
            let (rep, subject) = match which {
                Which::First => {
                    let (map, from, to) = (
                        need(map, "--map")?,
                        need(from, "--from")?,
                        need(to, "--to")?,
                    );
                    let (g, _, r1) = group_relation(&ws, Some(&from))?;
                    let (_, _, r2) = group_relation(&ws, Some(&to))?;
                    let eta = ws.map(&map)?;
                    let rep = first_iso_harness(eta, g, r1, g, r2)?;
                    (
                        rep,
                        format!("first: map {map} from relation {from} to relation {to}"),
                    )
                }
                Which::Second => {
                    let (g, name, rel) = group_relation(&ws, relation.as_deref())?;
                    let hs = subset(&ws, &need(h, "--h")?, "--h")?;
                    let ns = subset(&ws, &need(n, "--n")?, "--n")?;
                    let rep = second_iso_harness(g, rel, hs, ns)?;
                    let y = g.space();
                    (
                        rep,
                        format!(
                            "second: H = {} N = {} relation {name}",
                            y.format_subset(hs),
                            y.format_subset(ns)
                        ),
                    )
                }
                Which::Third => {
                    let (g, name, rel) = group_relation(&ws, relation.as_deref())?;
                    let ns = subset(&ws, &need(n, "--n")?, "--n")?;
                    let ks = subset(&ws, &need(k, "--k")?, "--k")?;
                    let rep = third_iso_harness(g, rel, ns, ks)?;
                    let y = g.space();
                    (
                        rep,
                        format!(
                            "third: N = {} K = {} relation {name}",
                            y.format_subset(ns),
                            y.format_subset(ks)
                        ),
                    )
                }
            };
            let mut r = Report::new("iso-theorems", subject);
            r.warnings = ws.warnings.clone();
            iso_items(&mut r, &rep);
            Ok(r)
        }
        Command::DescriptiveCheck {
            doc,
            probes,
            ef,
            group,
        } => {
            let ws = load(doc, max_n, stdin)?;
            let (name, p) = ws.probe_table(probes.as_deref())?;
            let mut r = Report::new(
                "descriptive-check",
                format!("probes {name} (arity {})", p.arity()),
            );
            r.warnings = ws.warnings.clone();
            let rep = if *ef {
                check_descriptive_ef(p)
            } else {
                check_descriptive_lodato(p)
            };
            r.axioms("", &rep, p.space());
            if *group {
                let g = ws.group()?;
                let rep = check_descriptive_proximal_group(g, p)?;
                group_items(&mut r, "group.", &rep, g.space());
            }
            Ok(r)
        }
        Command::MappingSpace {
            doc,
            from,
            to,
            left,
            right,
        } => {
            let ws = load(doc, max_n, stdin)?;
            let (_, p1) = ws.probe_table(Some(from))?;
            let (_, p2) = ws.probe_table(Some(to))?;
            let lmaps = left
                .iter()
                .map(|m| ws.map(m).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            let rmaps = right
                .iter()
                .map(|m| ws.map(m).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            let mut r = Report::new(
                "mapping-space",
                format!(
                    "{{{}}} vs {{{}}} from probes {from} to probes {to}",
                    left.join(","),
                    right.join(",")
                ),
            );
            r.warnings = ws.warnings.clone();
            let mut all_dpcont = true;
            for (side, names, maps) in [("left", left, &lmaps), ("right", right, &rmaps)] {
                for (m, f) in names.iter().zip(maps.iter()) {
                    let rep = check_dpcont(f, p1, p2)?;
                    all_dpcont &= rep.passed();
                    r.axioms(&format!("{side}.{m}."), &rep, p1.space());
                }
            }
            if !all_dpcont {
                return Ok(r);
            }
            let v = mapping_space_relation(&lmaps, &rmaps, p1, p2)?;
            match v.witness {
                None => r.pass("NEAR"),
                Some((j, k, a, b)) => r.fail(
                    "NEAR",
                    WitnessOut::new(Some(p1.space()), &[a, b]),
                    Some(format!("{}(A) far from {}(B)", left[j], right[k])),
                ),
            };
            Ok(r)
        }
        Command::Enumerate { n, class, list } => {
            let class = AxiomClass::from(*class);
            let rels = enumerate_relations(*n, class)?;
            let mut r = Report::new("enumerate", format!("class {} on {n} points", class.name()));
            r.info("count", rels.len().to_string());
            if *list {
                for (k, rel) in rels.iter().enumerate() {
                    r.info(format!("relation[{k}]"), edges(rel));
                }
            }
            Ok(r)
        }
        Command::Fuzz {
            theorem,
            enumerated_order,
            dc_order,
            class,
            limit,
        } => {
            let t = TheoremId::parse(theorem)?;
            let d = t.default_scope();
            let scope = FuzzScope {
                enumerated_order: enumerated_order.unwrap_or(d.enumerated_order),
                dc_order: dc_order.unwrap_or(d.dc_order),
                class: class.map(AxiomClass::from).unwrap_or(d.class),
            };
            let out = fuzz_theorem(t, scope)?;
            let mut r = Report::new(
                "fuzz",
                format!(
                    "{t} enumerated order {} discrete/coarse order {} class {}",
                    scope.enumerated_order,
                    scope.dc_order,
                    scope.class.name()
                ),
            );
            r.info("instances", out.instances.to_string());
            r.info("hypotheses_met", out.hypotheses_met.to_string());
            r.info("counterexamples", out.counterexamples.len().to_string());
            if out.counterexamples.is_empty() {
                r.pass(t.name());
            }
            for (i, cx) in out.counterexamples.iter().take(*limit).enumerate() {
                let detail = match &cx.axiom_witness {
                    Some((ax, _)) if !cx.detail.contains(ax.name()) => {
                        format!("{} [{ax}]", cx.detail)
                    }
                    _ => cx.detail.clone(),
                };
                r.fail(
                    format!("counterexample[{i}]"),
                    counterexample_witness(t, cx),
                    Some(detail),
                );
            }
            Ok(r)
        }
        Command::Census { n } => {
            let c = mine_separating_examples(*n)?;
            let mut r = Report::new("census", format!("Čech relations on {n} points"));
            let counts = |m: &std::collections::BTreeMap<String, usize>| {
                m.iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            r.info("counts", counts(&c.counts));
            if let Some(naive) = &c.naive_counts {
                r.info("naive_counts", counts(naive));
            }
            // Containments are whole-enumeration facts with no single witness.
            let note = |ok: bool| if ok { "holds" } else { "fails" };
            r.info("ef_within_cech", note(c.containments.ef_within_cech));
            r.info("lodato_equals_ef", note(c.containments.lodato_equals_ef));
            // In the order the census looks for them.
            for name in [
                "cech-not-lodato",
                "cech-not-ef",
                "lodato-not-ef",
                "ef-not-lodato",
            ] {
                let item = name.replace("-not-", "-implies-");
                let Some(e) = c.exemplars.iter().find(|e| e.separation == name) else {
                    r.pass(item);
                    continue;
                };
                let detail = format!(
                    "{} fails on {} ({} near pairs){}",
                    e.failing_axiom,
                    edges(&e.relation),
                    e.near_pairs,
                    if e.naive_confirmed {
                        ", naive oracle agrees"
                    } else {
                        ", naive oracle disagrees"
                    }
                );
                r.fail(
                    item,
                    WitnessOut::of(e.relation.space(), &e.witness),
                    Some(detail),
                );
            }
            Ok(r)
        }
    }
}
