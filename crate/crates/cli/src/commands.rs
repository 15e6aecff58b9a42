use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::rc::Rc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use workbench_core::classifier::{classify_round_trip, heyting, omega, omega_of_site, HeytingAlgebra};
use workbench_core::fincat::{
    count_naturals, enumerate_naturals, yoneda_from_element, yoneda_presheaf, yoneda_to_element, FinCategory, Mor, Obj,
    Presheaf, SetFunctor,
};
use workbench_core::limits::{
    certify_colimit, certify_limit, coequalizer, colimit, equalizer, kan_extension, kan_to_point, limit, pullback,
    verify_kan, Diagram, DiagramSampler, KanDirection, PointKan, SetMap,
};
use workbench_core::logic::{
    check_semantics, corpus, forces, forcing_table, interpret, random_formulas, witnesses, Environment, Formula, Structure,
};
use workbench_core::sheaf::{glue, is_sheaf, matching_families, certify_sheafification, sheafify, MatchingFamily, SheafReport};
use workbench_core::site::{generate_sieve, validate_topology, GrothendieckTopology, TopologyViolation};
use workbench_core::torsor::{
    canonical_map_check, check_cocycle, cocycles_equivalent, extract_cocycle, glue_torsor, is_torsor, local_section_choices,
    random_cocycles, Cocycle, Cover, GroupSheaf, LocalSections, Nonemptiness, TorsorCandidate,
};
use workbench_core::{Bounds, Exec};

use crate::gallery::gallery;
use crate::load::{self, DocumentSet, LoadError};
use crate::report::{Report, Verdict};
use crate::resolve::{ActionOn, PresheafOn, Resolver, Site};
use crate::schema::Document;

const ARGS: &str = "command line";

#[derive(Parser, Debug)]
#[command(name = "workbench", version, about = "Finite sheaf and topos computations, checked by exhaustive enumeration")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized test families.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of results a single enumeration may produce.
    #[arg(long, global = true, env = "WORKBENCH_BOUND")]
    pub bound: Option<usize>,
    /// Include wall-clock timing in the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Enumerate on a single thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Extra document files or directories; their names shadow the gallery.
    #[arg(long = "load", global = true, value_name = "PATH")]
    pub load: Vec<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    Universal,
    AtTerminal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the category axioms of a category document.
    ValidateCategory {
        #[arg(long)]
        category: String,
    },
    /// Check the Grothendieck topology axioms.
    ValidateTopology {
        #[arg(long)]
        topology: String,
    },
    /// Check the sheaf condition for every covering sieve.
    CheckSheaf {
        #[arg(long)]
        presheaf: String,
        #[arg(long)]
        site: Option<String>,
    },
    /// Glue a matching family over the sieve generated by a cover.
    Glue {
        #[arg(long)]
        presheaf: String,
        #[arg(long)]
        site: Option<String>,
        #[arg(long)]
        at: String,
        /// Members of the cover; each needs an arrow into `--at`.
        #[arg(long = "cover", required = true)]
        cover: Vec<String>,
        /// `MEMBER=ELEMENT`; without any, every matching family is glued.
        #[arg(long = "section")]
        sections: Vec<String>,
    },
    /// Sheafify a presheaf and check the result.
    Sheafify {
        #[arg(long)]
        presheaf: String,
        #[arg(long)]
        site: Option<String>,
        /// Also check the universal property against sheaves up to this size.
        #[arg(long)]
        certify: Option<usize>,
    },
    /// Build the subobject classifier of a site.
    Omega {
        #[arg(long)]
        site: String,
    },
    /// Check that closed subobjects correspond to maps into the classifier.
    Classify {
        #[arg(long, conflicts_with = "all_max")]
        presheaf: Option<String>,
        #[arg(long)]
        site: Option<String>,
        /// Check every sheaf on the site with value sets up to this size.
        #[arg(long, requires = "site")]
        all_max: Option<usize>,
    },
    /// Check the Heyting algebra of closed subobjects.
    Heyting {
        #[arg(long, conflicts_with = "all_max")]
        presheaf: Option<String>,
        #[arg(long)]
        site: Option<String>,
        /// Check every presheaf on the site with value sets up to this size.
        #[arg(long, requires = "site")]
        all_max: Option<usize>,
    },
    /// Kripke–Joyal forcing of a formula at an object.
    Force {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        at: String,
        /// `VAR=ELEMENT` for each context variable.
        #[arg(long = "bind")]
        bind: Vec<String>,
        /// Ignored; the formula document names its site.
        #[arg(long)]
        site: Option<String>,
    },
    /// Interpret a formula as a subobject and compare with forcing.
    Interpret {
        #[arg(long)]
        formula: String,
    },
    /// Check both semantics on every formula of the signature up to a depth.
    Semantics {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Use this many seeded random formulas of exactly `--depth` instead.
        #[arg(long)]
        random: Option<usize>,
    },
    /// List the sections of a presheaf or torsor over an object.
    Sections { sort: String, object: String },
    /// Check the torsor axioms and the canonical map.
    TorsorCheck {
        #[arg(long)]
        action: String,
        #[arg(long, value_enum, default_value_t = Reading::Universal)]
        reading: Reading,
    },
    /// Extract a cocycle from local sections of a torsor.
    ExtractCocycle {
        #[arg(long)]
        action: String,
        #[arg(long, requires = "members")]
        target: Option<String>,
        #[arg(long = "member")]
        members: Vec<String>,
        /// `MEMBER=ELEMENT` for every member.
        #[arg(long = "section", conflicts_with = "all_choices")]
        sections: Vec<String>,
        /// Extract from every choice of local sections.
        #[arg(long)]
        all_choices: bool,
    },
    /// Check the cocycle identities.
    CheckCocycle {
        #[arg(long)]
        cocycle: String,
    },
    /// Glue a torsor from a cocycle and run the descent round trip.
    GlueTorsor {
        #[arg(long)]
        cocycle: String,
        /// Also round-trip this many seeded random cocycles on the same cover.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Decide coboundary equivalence of two cocycles.
    CocycleEquiv {
        #[arg(long)]
        cocycle: String,
        #[arg(long)]
        with: String,
    },
    /// Limit of a diagram.
    Limit {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        certify: bool,
    },
    /// Colimit of a diagram.
    Colimit {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        certify: bool,
    },
    /// Pullback of a cospan diagram.
    Pullback {
        #[arg(long, alias = "fixture")]
        diagram: String,
    },
    /// Equalizer of a parallel pair diagram.
    Equalizer {
        #[arg(long)]
        diagram: String,
    },
    /// Coequalizer of a parallel pair diagram.
    Coequalizer {
        #[arg(long)]
        diagram: String,
    },
    /// Kan extensions, to a point or along a functor.
    Kan {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long, required_unless_present = "random")]
        diagram: Option<String>,
        #[arg(long, requires = "diagram")]
        along: Option<String>,
        /// Compare with (co)limits on this many seeded random diagrams.
        #[arg(long, conflicts_with = "diagram")]
        random: Option<usize>,
        /// Largest test functor used to verify an extension along a functor.
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
    /// Check the Yoneda correspondence for every small presheaf.
    Yoneda {
        #[arg(long)]
        category: String,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
    /// Load and validate documents.
    Load { path: PathBuf },
    /// Check or rewrite documents in canonical form.
    Fmt {
        path: PathBuf,
        #[arg(long)]
        write: bool,
    },
    /// List available documents.
    List,
}

#[derive(Debug)]
pub enum CliError {
    Load(Vec<LoadError>),
    Usage(String),
    Intractable(String),
    Failed(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Load(errs) => {
                for (i, e) in errs.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Intractable(m) => write!(f, "intractable: {m}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        CliError::Load(vec![e])
    }
}

fn core<E: fmt::Display>(e: E) -> CliError {
    let m = e.to_string();
    if m.contains("exceeded the bound") || m.contains("above the bound") {
        CliError::Intractable(m)
    } else {
        CliError::Failed(m)
    }
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

impl Cli {
    pub fn bounds(&self) -> Bounds {
        let mut b = Bounds::default();
        if let Some(n) = self.bound {
            b.enumeration = n;
        }
        if self.sequential {
            b.exec = Exec::Sequential;
        }
        b
    }
}

/// The gallery overlaid with every `--load` path.
pub fn documents(paths: &[PathBuf]) -> Result<DocumentSet, CliError> {
    let mut set = DocumentSet::new();
    set.overlay(gallery()).map_err(CliError::Load)?;
    for p in paths {
        set.overlay(load::read_documents(p).map_err(CliError::Load)?)
            .map_err(CliError::Load)?;
    }
    Ok(set)
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let docs = documents(&cli.load)?;
    let bounds = cli.bounds();
    let r = Resolver::new(&docs, bounds);
    let ctx = Ctx {
        r: &r,
        bounds,
        seed: cli.seed,
    };
    let mut report = ctx.dispatch(&cli.command, &docs)?;
    report.inputs = r.inputs();
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

/// Parses arguments, runs and renders. Returns the exit code with the
/// text for standard output and standard error.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            (report.verdict.exit_code(), out, String::new())
        }
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}

struct Ctx<'r, 'd> {
    r: &'r Resolver<'d>,
    bounds: Bounds,
    seed: u64,
}

fn sizes(f: &dyn SetFunctor) -> BTreeMap<String, usize> {
    let cat = f.base();
    cat.objects().map(|u| (cat.name(u).to_string(), f.size(u))).collect()
}

fn split_pair(s: &str) -> Result<(&str, &str), CliError> {
    s.split_once('=').ok_or_else(|| usage(format!("expected NAME=VALUE, got `{s}`")))
}

fn violation(v: &TopologyViolation) -> Value {
    match v {
        TopologyViolation::MissingMaximal { object } => json!({"axiom": "maximal", "object": object}),
        TopologyViolation::NotStable {
            object,
            sieve,
            along,
            pulled,
        } => json!({"axiom": "stability", "object": object, "sieve": sieve, "along": along, "pulled": pulled}),
        TopologyViolation::NotTransitive { object, sieve, witness } => {
            json!({"axiom": "transitivity", "object": object, "sieve": sieve, "witness": witness})
        }
    }
}

fn sheaf_witnesses(report: &mut Report, f: &Presheaf, sr: &SheafReport) {
    let cat = f.base();
    for c in sr.failures() {
        report.witness(json!({
            "object": cat.name(c.object),
            "sieve": c.sieve.label(cat),
            "sections": c.sections,
            "families": c.families,
            "collisions": c.collisions.iter().map(|&(x, y)| [f.label(c.object, x), f.label(c.object, y)]).collect::<Vec<_>>(),
            "unglued": c.unglued.iter().map(|m| m.label(f)).collect::<Vec<_>>(),
        }));
    }
}

fn cocycle_json(group: &GroupSheaf, c: &Cocycle) -> Value {
    let cat = group.base();
    let names = c.cover.names(cat);
    let mut values = Vec::new();
    for i in 0..c.cover.len() {
        for j in 0..c.cover.len() {
            if i != j {
                values.push(json!([names[i], names[j], c.label(group, i, j)]));
            }
        }
    }
    json!({"target": cat.name(c.cover.target()), "members": names, "values": values})
}

fn nonemptiness(r: Reading) -> Nonemptiness {
    match r {
        Reading::Universal => Nonemptiness::Universal,
        Reading::AtTerminal => Nonemptiness::AtTerminal,
    }
}

fn torsor_results(report: &mut Report, t: &TorsorCandidate, j: &GrothendieckTopology, reading: Nonemptiness) {
    let tr = is_torsor(t, j, reading);
    let cr = canonical_map_check(t, j);
    report.set("torsor", tr.holds());
    report.set("canonical_map", cr.holds());
    for o in &tr.locally_empty {
        report.witness(json!({"check": "locally nonempty", "object": o}));
    }
    for n in &tr.not_unique {
        report.witness(json!({
            "check": if n.carriers.is_empty() { "transitive" } else { "free" },
            "object": n.object, "from": n.from, "to": n.to, "carriers": n.carriers,
        }));
    }
    for c in &cr.collisions {
        report.witness(json!({"check": "canonical map injective", "object": c.object, "element": c.element, "first": c.first, "second": c.second}));
    }
    for (o, p, q) in &cr.missed {
        report.witness(json!({"check": "canonical map surjective", "object": o, "pair": [p, q]}));
    }
    for o in &cr.not_epi {
        report.witness(json!({"check": "torsor map epimorphic", "object": o}));
    }
    report.require(tr.holds() && cr.holds());
}

/// Two non-identity arrows of the shape with a common target, as set maps.
fn cospan_maps(d: &Diagram) -> Result<(SetMap, SetMap), CliError> {
    let shape = d.shape();
    let arrows: Vec<Mor> = shape.morphisms().filter(|&m| !shape.is_identity(m)).collect();
    let [f, g] = arrows[..] else {
        return Err(usage("a cospan diagram has exactly two non-identity arrows"));
    };
    if shape.target(f) != shape.target(g) || shape.source(f) == shape.source(g) {
        return Err(usage("the two arrows must share a target and have different sources"));
    }
    Ok((set_map(d, f)?, set_map(d, g)?))
}

fn parallel_maps(d: &Diagram) -> Result<(SetMap, SetMap), CliError> {
    let shape = d.shape();
    let arrows: Vec<Mor> = shape.morphisms().filter(|&m| !shape.is_identity(m)).collect();
    let [f, g] = arrows[..] else {
        return Err(usage("a parallel pair diagram has exactly two non-identity arrows"));
    };
    if shape.source(f) != shape.source(g) || shape.target(f) != shape.target(g) {
        return Err(usage("the two arrows must be parallel"));
    }
    Ok((set_map(d, f)?, set_map(d, g)?))
}

fn set_map(d: &Diagram, m: Mor) -> Result<SetMap, CliError> {
    let shape = d.shape();
    SetMap::new(
        d.elements(shape.source(m)).to_vec(),
        d.elements(shape.target(m)).to_vec(),
        d.action(m).to_vec(),
    )
    .map_err(core)
}

impl Ctx<'_, '_> {
    fn dispatch(&self, command: &Command, docs: &DocumentSet) -> Result<Report, CliError> {
        use Command::*;
        match command {
            ValidateCategory { category } => self.validate_category(category),
            ValidateTopology { topology } => self.validate_topology(topology),
            CheckSheaf { presheaf, site } => self.check_sheaf(presheaf, site.as_deref()),
            Glue {
                presheaf,
                site,
                at,
                cover,
                sections,
            } => self.glue(presheaf, site.as_deref(), at, cover, sections),
            Sheafify { presheaf, site, certify } => self.sheafify(presheaf, site.as_deref(), *certify),
            Omega { site } => self.omega(site),
            Classify { presheaf, site, all_max } => self.classify(presheaf.as_deref(), site.as_deref(), *all_max),
            Heyting { presheaf, site, all_max } => self.heyting(presheaf.as_deref(), site.as_deref(), *all_max),
            Force { formula, at, bind, .. } => self.force(formula, at, bind),
            Interpret { formula } => self.interpret(formula),
            Semantics { formula, depth, random } => self.semantics(formula, *depth, *random),
            Sections { sort, object } => self.sections(sort, object),
            TorsorCheck { action, reading } => self.torsor_check(action, *reading),
            ExtractCocycle {
                action,
                target,
                members,
                sections,
                all_choices,
            } => self.extract_cocycle(action, target.as_deref(), members, sections, *all_choices),
            CheckCocycle { cocycle } => self.check_cocycle(cocycle),
            GlueTorsor { cocycle, random } => self.glue_torsor(cocycle, *random),
            CocycleEquiv { cocycle, with } => self.cocycle_equiv(cocycle, with),
            Limit { diagram, certify } => self.limit(diagram, *certify),
            Colimit { diagram, certify } => self.colimit(diagram, *certify),
            Pullback { diagram } => self.pullback(diagram),
            Equalizer { diagram } => self.equalizer(diagram),
            Coequalizer { diagram } => self.coequalizer(diagram),
            Kan {
                direction,
                diagram,
                along,
                random,
                max_size,
            } => self.kan(*direction, diagram.as_deref(), along.as_deref(), *random, *max_size),
            Yoneda { category, max_size } => self.yoneda(category, *max_size),
            Load { path } => self.load(path),
            Fmt { path, write } => fmt_documents(path, *write),
            List => Ok(list(docs)),
        }
    }

    fn validate_category(&self, name: &str) -> Result<Report, CliError> {
        let mut report = Report::new("validate-category");
        let cat = match self.r.document(ARGS, name)? {
            Document::Category(d) => {
                let raw = self.r.raw_category(d)?;
                match FinCategory::validate(&raw, self.bounds.max_hom) {
                    Ok(c) => c,
                    Err(e) => {
                        report.set("valid", false);
                        report.witness(e.to_string());
                        report.require(false);
                        return Ok(report);
                    }
                }
            }
            _ => (*self.r.category(ARGS, name)?).clone(),
        };
        report.set("valid", true);
        report.set("objects", cat.object_count());
        report.set("morphisms", cat.morphism_count());
        report.set("composable_pairs", cat.composable_pairs().count());
        report.set("thin", cat.is_thin());
        report.set("poset", cat.is_poset());
        Ok(report)
    }

    fn validate_topology(&self, name: &str) -> Result<Report, CliError> {
        let mut report = Report::new("validate-topology");
        let j = match self.r.document(ARGS, name)? {
            Document::Topology(d) => self.r.topology(d)?,
            _ => self.r.site(ARGS, name)?.topology.clone(),
        };
        let tr = validate_topology(&j, &self.bounds).map_err(core)?;
        report.set("objects", tr.objects);
        report.set("covering_sieves", tr.covering_sieves);
        report.set("sieves_examined", tr.sieves_examined);
        let cat = j.base();
        report.set(
            "covers",
            cat.objects()
                .map(|u| (cat.name(u).to_string(), j.covers(u).iter().map(|s| s.label(cat)).collect::<Vec<_>>()))
                .collect::<BTreeMap<_, _>>(),
        );
        for v in &tr.violations {
            report.witness(violation(v));
        }
        report.require(tr.is_valid());
        Ok(report)
    }

    /// A presheaf and the topology to use with it: its own site's, or that
    /// of `--site`, which must share the base category.
    fn presheaf_and_site(&self, presheaf: &str, site: Option<&str>) -> Result<(Rc<PresheafOn>, Rc<Site>), CliError> {
        let p = self.r.presheaf(ARGS, presheaf)?;
        let s = match site {
            Some(s) => {
                let s = self.r.site(ARGS, s)?;
                if *s.category != *p.site.category {
                    return Err(usage(format!("`{presheaf}` does not live over `{}`", s.name)));
                }
                s
            }
            None => p.site.clone(),
        };
        Ok((p, s))
    }

    fn check_sheaf(&self, presheaf: &str, site: Option<&str>) -> Result<Report, CliError> {
        let (p, s) = self.presheaf_and_site(presheaf, site)?;
        let f = &p.presheaf;
        let sr = is_sheaf(f, &s.topology, &self.bounds).map_err(core)?;
        let mut report = Report::new("check-sheaf");
        report.set("sheaf", sr.is_sheaf());
        report.set("separated", sr.is_separated());
        report.set("sieves_checked", sr.checks.len());
        report.set("sizes", sizes(f));
        sheaf_witnesses(&mut report, f, &sr);
        report.require(sr.is_sheaf());
        Ok(report)
    }

    fn glue(&self, presheaf: &str, site: Option<&str>, at: &str, cover: &[String], sections: &[String]) -> Result<Report, CliError> {
        let (p, s) = self.presheaf_and_site(presheaf, site)?;
        let (f, cat, j) = (&p.presheaf, &s.category, &s.topology);
        let obj = |n: &str| s.object(n).ok_or_else(|| usage(format!("no object `{n}` in `{}`", s.name)));
        let u = obj(at)?;
        let mut gens = Vec::new();
        for v in cover {
            let v = obj(v)?;
            let g = *cat.hom(v, u).first().ok_or_else(|| usage(format!("no arrow {} -> {at}", cat.name(v))))?;
            gens.push(g);
        }
        let sieve = generate_sieve(cat, u, &gens).map_err(core)?;
        if !j.is_covering(&sieve) {
            return Err(usage(format!("{} is not a covering sieve", sieve.label(cat))));
        }
        let mut report = Report::new("glue");
        report.set("object", at);
        report.set("sieve", sieve.label(cat));
        let families: Vec<MatchingFamily> = if sections.is_empty() {
            matching_families(f, &sieve, &self.bounds).map_err(core)?
        } else {
            let mut chosen: Vec<Option<usize>> = vec![None; gens.len()];
            for s in sections {
                let (member, label) = split_pair(s)?;
                let i = cover
                    .iter()
                    .position(|c| c == member)
                    .ok_or_else(|| usage(format!("`{member}` is not in the cover")))?;
                let v = cat.source(gens[i]);
                chosen[i] = Some(f.position(v, label).ok_or_else(|| usage(format!("no element `{label}` over `{member}`")))?);
            }
            let chosen: Vec<usize> = chosen
                .into_iter()
                .collect::<Option<_>>()
                .ok_or_else(|| usage("give a section for every member of the cover"))?;
            // extend the choice to every arrow of the sieve through some generator
            let mut assignment = Vec::new();
            for &a in sieve.arrows() {
                let w = cat.source(a);
                let value = gens.iter().zip(&chosen).find_map(|(&g, &x)| {
                    cat.hom(w, cat.source(g))
                        .iter()
                        .find(|&&h| cat.compose(g, h) == Some(a))
                        .map(|&h| f.restrict(h, x))
                });
                assignment.push((a, value.expect("generated sieves factor through a generator")));
            }
            match MatchingFamily::new(f, sieve.clone(), &assignment) {
                Ok(m) => vec![m],
                Err(e) => {
                    report.set("matching", false);
                    report.witness(e.to_string());
                    report.require(false);
                    return Ok(report);
                }
            }
        };
        let mut glued = Vec::new();
        for m in &families {
            match glue(f, j, m, &self.bounds) {
                Ok(x) => glued.push(json!({"family": m.label(f), "section": f.label(u, x)})),
                Err(e) => {
                    report.witness(json!({"family": m.label(f), "error": e.to_string()}));
                    report.require(false);
                }
            }
        }
        report.set("families", families.len());
        report.set("glued", glued);
        Ok(report)
    }

    fn sheafify(&self, presheaf: &str, site: Option<&str>, certify: Option<usize>) -> Result<Report, CliError> {
        let (p, s) = self.presheaf_and_site(presheaf, site)?;
        let (f, j) = (&p.presheaf, &s.topology);
        let sh = sheafify(f, j, &self.bounds).map_err(core)?;
        let sheaf = is_sheaf(&sh.presheaf, j, &self.bounds).map_err(core)?.is_sheaf();
        let again = sheafify(&sh.presheaf, j, &self.bounds).map_err(core)?;
        let idempotent = again.unit.is_iso(&sh.presheaf, &again.presheaf);
        let mut report = Report::new("sheafify");
        report.set("sizes_before", sizes(f));
        report.set("sizes_after", sizes(&sh.presheaf));
        let cat = sh.presheaf.base();
        report.set(
            "sections",
            cat.objects()
                .map(|u| (cat.name(u).to_string(), sh.presheaf.elements(u).to_vec()))
                .collect::<BTreeMap<_, _>>(),
        );
        report.set("unit_is_iso", sh.unit.is_iso(f, &sh.presheaf));
        report.set("sheaf", sheaf);
        report.set("second_unit_is_iso", idempotent);
        report.require(sheaf && idempotent);
        if let Some(n) = certify {
            let cert = certify_sheafification(f, j, &sh, n, &self.bounds).map_err(core)?;
            report.set("maps_checked", cert.cones_checked);
            report.set("factorization_failures", cert.failures.len());
            report.require(cert.holds());
        }
        Ok(report)
    }

    fn omega(&self, site: &str) -> Result<Report, CliError> {
        let s = self.r.site(ARGS, site)?;
        let mut report = Report::new("omega");
        let om = match &s.space {
            Some(space) => {
                let (om, cert) = omega_of_site(space, &self.bounds).map_err(core)?;
                report.set(
                    "opens_isomorphism",
                    cert.checks
                        .iter()
                        .map(|c| json!({"object": c.object, "bijective": c.bijective, "monotone": c.monotone, "pairs": c.pairs}))
                        .collect::<Vec<_>>(),
                );
                report.require(cert.holds());
                om
            }
            None => omega(&s.topology, &self.bounds).map_err(core)?,
        };
        let cat = &s.category;
        report.set("sizes", sizes(&om.presheaf));
        report.set(
            "truth_values",
            cat.objects()
                .map(|u| (cat.name(u).to_string(), om.sieves[u.0].iter().map(|x| x.label(cat)).collect::<Vec<_>>()))
                .collect::<BTreeMap<_, _>>(),
        );
        let sr = is_sheaf(&om.presheaf, &s.topology, &self.bounds).map_err(core)?;
        report.set("sheaf", sr.is_sheaf());
        sheaf_witnesses(&mut report, &om.presheaf, &sr);
        report.require(sr.is_sheaf());
        Ok(report)
    }

    /// The presheaves a lattice-level command runs on: one named presheaf,
    /// or every presheaf on a site up to a size.
    fn ambient(&self, presheaf: Option<&str>, site: Option<&str>, all_max: Option<usize>) -> Result<(Vec<Presheaf>, Rc<Site>), CliError> {
        match (presheaf, all_max) {
            (Some(p), None) => {
                let (p, s) = self.presheaf_and_site(p, site)?;
                Ok((vec![p.presheaf.clone()], s))
            }
            (None, Some(n)) => {
                let s = self.r.site(ARGS, site.ok_or_else(|| usage("--all-max needs --site"))?)?;
                let all = Presheaf::enumerate(&s.category, n, &self.bounds).map_err(core)?;
                Ok((all, s))
            }
            _ => Err(usage("give --presheaf or --site with --all-max")),
        }
    }

    fn classify(&self, presheaf: Option<&str>, site: Option<&str>, all_max: Option<usize>) -> Result<Report, CliError> {
        let (all, s) = self.ambient(presheaf, site, all_max)?;
        let om = omega(&s.topology, &self.bounds).map_err(core)?;
        let mut report = Report::new("classify");
        let (mut checked, mut subs, mut arrows) = (0, 0, 0);
        for f in &all {
            if all_max.is_some() && !is_sheaf(f, &s.topology, &self.bounds).map_err(core)?.is_sheaf() {
                continue;
            }
            let rt = classify_round_trip(f, &s.topology, &om, &self.bounds).map_err(core)?;
            checked += 1;
            subs += rt.subobjects;
            arrows += rt.arrows;
            for e in &rt.failures {
                report.witness(json!({"presheaf": sizes(f), "failure": e}));
            }
            report.require(rt.holds());
        }
        if all_max.is_some() {
            report.set("presheaves_enumerated", all.len());
            report.set("sheaves_checked", checked);
        }
        report.set("closed_subobjects", subs);
        report.set("maps_to_omega", arrows);
        Ok(report)
    }

    fn heyting(&self, presheaf: Option<&str>, site: Option<&str>, all_max: Option<usize>) -> Result<Report, CliError> {
        let (all, s) = self.ambient(presheaf, site, all_max)?;
        let mut report = Report::new("heyting");
        let (mut checked, mut skipped, mut non_boolean) = (0, 0, 0);
        let mut largest = 0;
        for f in &all {
            let h: HeytingAlgebra = match heyting(f, &s.topology, &self.bounds) {
                Ok(h) => h,
                Err(e) if all_max.is_some() && core(&e).is_intractable() => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(core(e)),
            };
            checked += 1;
            largest = largest.max(h.len());
            for fail in h.check_axioms() {
                report.witness(json!({
                    "presheaf": sizes(f),
                    "law": fail.law,
                    "elements": fail.elements.iter().map(|&i| h.elements[i].label(f)).collect::<Vec<_>>(),
                }));
                report.require(false);
            }
            if let Some(a) = h.excluded_middle_witness() {
                non_boolean += 1;
                if all_max.is_none() {
                    report.set("excluded_middle_fails_at", h.elements[a].label(f));
                }
            }
            if all_max.is_none() {
                report.set("elements", h.len());
                report.set("boolean", h.excluded_middle_witness().is_none());
            }
        }
        if all_max.is_some() {
            report.set("presheaves_enumerated", all.len());
            report.set("algebras_checked", checked);
            report.set("skipped_above_lattice_bound", skipped);
            report.set("largest_algebra", largest);
            report.set("non_boolean_algebras", non_boolean);
        }
        Ok(report)
    }

    fn environment(&self, st: &Structure, context: &[(String, String)], at: Obj, bind: &[String]) -> Result<Environment, CliError> {
        let mut given: BTreeMap<&str, &str> = BTreeMap::new();
        for b in bind {
            let (v, x) = split_pair(b)?;
            given.insert(v, x);
        }
        let mut env = Environment::empty(at);
        for (var, sort) in context {
            let label = given
                .remove(var.as_str())
                .ok_or_else(|| usage(format!("bind the context variable `{var}` with --bind {var}=ELEMENT")))?;
            let x = st
                .sort(sort)
                .map_err(core)?
                .position(at, label)
                .ok_or_else(|| usage(format!("`{label}` is not an element of `{sort}` here")))?;
            env = env.bind(var, sort, x);
        }
        if let Some(v) = given.keys().next() {
            return Err(usage(format!("`{v}` is not a context variable")));
        }
        Ok(env)
    }

    fn force(&self, formula: &str, at: &str, bind: &[String]) -> Result<Report, CliError> {
        let fo = self.r.formula(ARGS, formula)?;
        let u = fo.site.object(at).ok_or_else(|| usage(format!("no object `{at}` in `{}`", fo.site.name)))?;
        let env = self.environment(&fo.structure, &fo.signature.context, u, bind)?;
        let forced = forces(&fo.structure, &fo.formula, &env).map_err(core)?;
        let mut report = Report::new("force");
        report.set("formula", fo.formula.to_string());
        report.set("at", fo.site.category.name(u));
        report.set("forced", forced);
        if let Formula::Exists { var, sort, body } = &fo.formula {
            let ws = witnesses(&fo.structure, var, sort, body, &env).map_err(core)?;
            let s = fo.structure.sort(sort).map_err(core)?;
            report.set("witnesses_here", ws.iter().map(|&x| s.label(u, x)).collect::<Vec<_>>());
        }
        report.require(forced);
        Ok(report)
    }

    fn interpret(&self, formula: &str) -> Result<Report, CliError> {
        let fo = self.r.formula(ARGS, formula)?;
        let ctx = &fo.signature.context;
        let it = interpret(&fo.structure, &fo.formula, ctx).map_err(core)?;
        let (_, table) = forcing_table(&fo.structure, &fo.formula, ctx).map_err(core)?;
        let agree = table == it.subobject.parts();
        let cat = &fo.site.category;
        let prod = &it.product.presheaf;
        let mut report = Report::new("interpret");
        report.set("formula", fo.formula.to_string());
        report.set("context", ctx);
        report.set(
            "extension",
            cat.objects()
                .map(|u| {
                    let members: Vec<&str> = it.subobject.members(u).into_iter().map(|t| prod.label(u, t)).collect();
                    (cat.name(u).to_string(), members)
                })
                .collect::<BTreeMap<_, _>>(),
        );
        report.set("agrees_with_forcing", agree);
        report.require(agree);
        Ok(report)
    }

    fn semantics(&self, formula: &str, depth: usize, random: Option<usize>) -> Result<Report, CliError> {
        let fo = self.r.formula(ARGS, formula)?;
        let formulas = match random {
            Some(n) => random_formulas(&fo.structure, &fo.signature, depth, n, self.seed).map_err(core)?,
            None => corpus(&fo.structure, &fo.signature, depth).map_err(core)?,
        };
        let sr = check_semantics(&fo.structure, &fo.signature.context, &formulas).map_err(core)?;
        let mut report = Report::new("semantics");
        report.set("depth", depth);
        report.set("formulas", sr.formulas);
        report.set("evaluations", sr.evaluations);
        for fail in &sr.failures {
            report.witness(json!({"formula": fail.formula, "property": fail.property, "object": fail.object, "element": fail.element}));
        }
        report.require(sr.holds());
        Ok(report)
    }

    fn sections(&self, sort: &str, object: &str) -> Result<Report, CliError> {
        let f = self.r.sort(ARGS, sort)?;
        let cat = f.base();
        let u = cat.object_by_name(object).or_else(|| {
            // spaces also accept set notation
            let site = match self.r.document(ARGS, sort).ok()? {
                Document::Presheaf(_) => self.r.presheaf(ARGS, sort).ok()?.site.clone(),
                _ => self.r.action(ARGS, sort).ok()?.group.site.clone(),
            };
            site.object(object).map(|o| site.category.name(o).to_string()).and_then(|n| cat.object_by_name(&n))
        });
        let u = u.ok_or_else(|| usage(format!("no object `{object}` under `{sort}`")))?;
        let mut report = Report::new("sections");
        report.set("sort", sort);
        report.set("object", cat.name(u));
        report.set("count", f.size(u));
        report.set("sections", f.elements(u));
        Ok(report)
    }

    fn torsor_check(&self, action: &str, reading: Reading) -> Result<Report, CliError> {
        let a = self.r.action(ARGS, action)?;
        let mut report = Report::new("torsor-check");
        report.set("sizes", sizes(&a.torsor.space));
        torsor_results(&mut report, &a.torsor, &a.topology, nonemptiness(reading));
        Ok(report)
    }

    fn cover_for(&self, a: &ActionOn, target: Option<&str>, members: &[String]) -> Result<Cover, CliError> {
        if members.is_empty() {
            return match &a.glued {
                Some((g, _)) => Ok(g.cover.clone()),
                None => Err(usage("give --target and --member for an action that was not glued")),
            };
        }
        let cat = a.torsor.base();
        let site = &a.group.site;
        let obj = |n: &str| {
            site.object(n)
                .and_then(|o| cat.object_by_name(site.category.name(o)))
                .ok_or_else(|| usage(format!("no object `{n}`")))
        };
        let target = obj(target.ok_or_else(|| usage("--member needs --target"))?)?;
        let members = members.iter().map(|m| obj(m)).collect::<Result<Vec<_>, _>>()?;
        Cover::new(&a.topology, target, members).map_err(|e| usage(e.to_string()))
    }

    fn extract_cocycle(
        &self,
        action: &str,
        target: Option<&str>,
        members: &[String],
        sections: &[String],
        all_choices: bool,
    ) -> Result<Report, CliError> {
        let a = self.r.action(ARGS, action)?;
        let t = &a.torsor;
        let cover = self.cover_for(&a, target, members)?;
        let cat = t.base();
        let names = cover.names(cat);
        let mut report = Report::new("extract-cocycle");
        let choices: Vec<LocalSections> = if all_choices {
            local_section_choices(t, &cover, &self.bounds).map_err(core)?
        } else if !sections.is_empty() {
            let mut chosen = vec![None; cover.len()];
            for s in sections {
                let (m, label) = split_pair(s)?;
                let i = names.iter().position(|n| *n == m).ok_or_else(|| usage(format!("`{m}` is not in the cover")))?;
                chosen[i] = Some(
                    t.space
                        .position(cover.members()[i], label)
                        .ok_or_else(|| usage(format!("no section `{label}` over `{m}`")))?,
                );
            }
            let chosen = chosen
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| usage("give a section for every member of the cover"))?;
            vec![LocalSections::new(t, cover.clone(), chosen).map_err(core)?]
        } else if let (Some((g, _)), true) = (&a.glued, members.is_empty()) {
            vec![g.sections.clone()]
        } else {
            local_section_choices(t, &cover, &self.bounds)
                .map_err(core)?
                .into_iter()
                .take(1)
                .collect()
        };
        report.set("cover", &names);
        report.set("choices", choices.len());
        if choices.is_empty() {
            report.witness("no local sections over some member of the cover");
            report.require(false);
            return Ok(report);
        }
        let group = &t.group;
        let mut first: Option<Cocycle> = None;
        let (mut valid, mut equivalent) = (0, 0);
        for l in &choices {
            let c = extract_cocycle(t, l).map_err(core)?;
            let check = check_cocycle(group, &c);
            if check.holds() {
                valid += 1;
            } else {
                report.witness(json!({"sections": self.section_labels(t, l), "failure": check.describe()}));
            }
            match &first {
                None => {
                    report.set("sections", self.section_labels(t, l));
                    report.set("cocycle", cocycle_json(group, &c));
                    if let Some((g, input)) = &a.glued {
                        if g.cover == cover {
                            let lifted = g.lift(&c);
                            report.set("equals_gluing_cocycle", lifted == input.cocycle);
                            let eq = cocycles_equivalent(&input.group.group, &lifted, &input.cocycle).map_err(core)?;
                            report.set("equivalent_to_gluing_cocycle", eq.is_some());
                            report.require(eq.is_some());
                        }
                    }
                    equivalent += 1;
                    first = Some(c);
                }
                Some(c0) => {
                    if cocycles_equivalent(group, &c, c0).map_err(core)?.is_some() {
                        equivalent += 1;
                    } else {
                        report.witness(json!({"sections": self.section_labels(t, l), "failure": "not equivalent to the first choice"}));
                    }
                }
            }
        }
        report.set("cocycle_identities_hold", valid);
        report.set("equivalent_to_first", equivalent);
        report.require(valid == choices.len() && equivalent == choices.len());
        Ok(report)
    }

    fn section_labels(&self, t: &TorsorCandidate, l: &LocalSections) -> Vec<String> {
        let cat = t.base();
        l.cover
            .members()
            .iter()
            .zip(&l.sections)
            .map(|(&m, &x)| format!("{}={}", cat.name(m), t.space.label(m, x)))
            .collect()
    }

    fn check_cocycle(&self, cocycle: &str) -> Result<Report, CliError> {
        let c = self.r.cocycle(ARGS, cocycle)?;
        let group = &c.group.group;
        let cr = check_cocycle(group, &c.cocycle);
        let mut report = Report::new("check-cocycle");
        report.set("cocycle", cocycle_json(group, &c.cocycle));
        report.set("holds", cr.holds());
        for u in &cr.bad_units {
            report.witness(json!({"identity": "g_ii = 1", "member": u}));
        }
        for (i, j, k) in &cr.bad_triples {
            report.witness(json!({"identity": "g_ij g_jk = g_ik", "members": [i, j, k]}));
        }
        report.require(cr.holds());
        Ok(report)
    }

    fn glue_torsor(&self, cocycle: &str, random: Option<usize>) -> Result<Report, CliError> {
        let c = self.r.cocycle(ARGS, cocycle)?;
        let group = &c.group.group;
        let j = &c.group.site.topology;
        let mut report = Report::new("glue-torsor");
        let check = check_cocycle(group, &c.cocycle);
        if let Some(why) = check.describe() {
            report.set("cocycle", false);
            report.witness(why);
            report.require(false);
            return Ok(report);
        }
        let glued = glue_torsor(group, &c.cocycle, j, &self.bounds).map_err(core)?;
        let t = &glued.torsor;
        let target = glued.cover.target();
        report.set("sizes", sizes(&t.space));
        torsor_results(&mut report, t, &glued.topology, Nonemptiness::Universal);
        report.set("global_sections", t.space.size(target));
        let extracted = extract_cocycle(t, &glued.sections).map_err(core)?;
        let lifted = glued.lift(&extracted);
        let eq = cocycles_equivalent(group, &lifted, &c.cocycle).map_err(core)?;
        report.set("extracted", cocycle_json(group, &lifted));
        report.set("extracted_equivalent", eq.is_some());
        report.require(eq.is_some());
        if let Some(n) = random {
            let samples = random_cocycles(group, &c.cocycle.cover, n, self.seed, &self.bounds).map_err(core)?;
            let mut ok = 0;
            for s in &samples {
                let g = glue_torsor(group, s, j, &self.bounds).map_err(core)?;
                let e = g.lift(&extract_cocycle(&g.torsor, &g.sections).map_err(core)?);
                let torsor = is_torsor(&g.torsor, &g.topology, Nonemptiness::Universal).holds();
                if torsor && cocycles_equivalent(group, &e, s).map_err(core)?.is_some() {
                    ok += 1;
                } else {
                    report.witness(json!({"random_cocycle": cocycle_json(group, s), "failure": "round trip"}));
                }
            }
            report.set("random_round_trips", json!({"seed": self.seed, "count": n, "passed": ok}));
            report.require(ok == n);
        }
        Ok(report)
    }

    fn cocycle_equiv(&self, a: &str, b: &str) -> Result<Report, CliError> {
        let c1 = self.r.cocycle(ARGS, a)?;
        let c2 = self.r.cocycle(ARGS, b)?;
        if c1.group_name != c2.group_name {
            return Err(usage(format!("`{a}` and `{b}` take values in different group sheaves")));
        }
        let group = &c1.group.group;
        let eq = cocycles_equivalent(group, &c1.cocycle, &c2.cocycle).map_err(|e| usage(e.to_string()))?;
        let mut report = Report::new("cocycle-equiv");
        report.set("equivalent", eq.is_some());
        if let Some(h) = &eq {
            let cat = group.base();
            let labels: Vec<String> = c1
                .cocycle
                .cover
                .members()
                .iter()
                .zip(h)
                .map(|(&m, &x)| format!("{}={}", cat.name(m), group.presheaf.label(m, x)))
                .collect();
            report.witness(json!({"change_of_trivialization": labels}));
        }
        report.require(eq.is_some());
        Ok(report)
    }

    fn limit(&self, diagram: &str, certify: bool) -> Result<Report, CliError> {
        let d = self.r.diagram(ARGS, diagram)?;
        let lim = limit(&d, &self.bounds).map_err(core)?;
        let mut report = Report::new("limit");
        report.set("size", lim.apex.len());
        report.set("apex", &lim.apex);
        if certify {
            let cert = certify_limit(&d, &lim, &self.bounds).map_err(core)?;
            report.set("cones_checked", cert.cones_checked);
            report.set("factorization_failures", cert.failures.len());
            report.require(cert.holds());
        }
        Ok(report)
    }

    fn colimit(&self, diagram: &str, certify: bool) -> Result<Report, CliError> {
        let d = self.r.diagram(ARGS, diagram)?;
        let colim = colimit(&d);
        let mut report = Report::new("colimit");
        report.set("size", colim.apex.len());
        report.set("apex", &colim.apex);
        let shape = d.shape();
        report.set(
            "legs",
            shape
                .objects()
                .map(|o| {
                    let leg: BTreeMap<&str, &str> = d
                        .elements(o)
                        .iter()
                        .zip(&colim.legs[o.0])
                        .map(|(x, &y)| (x.as_str(), colim.apex[y].as_str()))
                        .collect();
                    (shape.name(o).to_string(), leg)
                })
                .collect::<BTreeMap<_, _>>(),
        );
        if certify {
            let cert = certify_colimit(&d, &colim, &self.bounds).map_err(core)?;
            report.set("cocones_checked", cert.cones_checked);
            report.set("factorization_failures", cert.failures.len());
            report.require(cert.holds());
        }
        Ok(report)
    }

    fn pullback(&self, diagram: &str) -> Result<Report, CliError> {
        let d = self.r.diagram(ARGS, diagram)?;
        let (f, g) = cospan_maps(&d)?;
        let pb = pullback(&f, &g).map_err(core)?;
        let lim = limit(&d, &self.bounds).map_err(core)?;
        let mut report = Report::new("pullback");
        report.set("size", pb.apex.len());
        report.set("apex", &pb.apex);
        report.set(
            "pairs",
            pb.pairs
                .iter()
                .map(|&(a, b)| [f.domain[a].as_str(), g.domain[b].as_str()])
                .collect::<Vec<_>>(),
        );
        report.set("agrees_with_limit", lim.apex.len() == pb.apex.len());
        report.require(lim.apex.len() == pb.apex.len());
        Ok(report)
    }

    fn equalizer(&self, diagram: &str) -> Result<Report, CliError> {
        let d = self.r.diagram(ARGS, diagram)?;
        let (f, g) = parallel_maps(&d)?;
        let e = equalizer(&f, &g).map_err(core)?;
        let mut report = Report::new("equalizer");
        report.set("size", e.apex.len());
        report.set("apex", &e.apex);
        report.set("inclusion", e.inclusion.iter().map(|&i| f.domain[i].as_str()).collect::<Vec<_>>());
        Ok(report)
    }

    fn coequalizer(&self, diagram: &str) -> Result<Report, CliError> {
        let d = self.r.diagram(ARGS, diagram)?;
        let (f, g) = parallel_maps(&d)?;
        let q = coequalizer(&f, &g).map_err(core)?;
        let mut report = Report::new("coequalizer");
        report.set("size", q.apex.len());
        report.set("apex", &q.apex);
        report.set(
            "quotient",
            f.codomain
                .iter()
                .zip(&q.quotient)
                .map(|(x, &c)| (x.as_str(), q.apex[c].as_str()))
                .collect::<BTreeMap<_, _>>(),
        );
        Ok(report)
    }

    fn kan(&self, direction: Direction, diagram: Option<&str>, along: Option<&str>, random: Option<usize>, max_size: usize) -> Result<Report, CliError> {
        let dir = match direction {
            Direction::Left => KanDirection::Left,
            Direction::Right => KanDirection::Right,
        };
        let mut report = Report::new("kan");
        report.set("direction", if dir == KanDirection::Left { "left" } else { "right" });
        let to_point = |d: &Diagram| -> Result<(bool, Vec<String>), CliError> {
            Ok(match kan_to_point(dir, d, &self.bounds).map_err(core)? {
                PointKan::Left(c) => (c == colimit(d), c.apex),
                PointKan::Right(l) => (l == limit(d, &self.bounds).map_err(core)?, l.apex),
            })
        };
        if let Some(n) = random {
            let mut sampler = DiagramSampler::new(self.seed);
            let mut agree = 0;
            for i in 0..n {
                let d = sampler.sample();
                let (ok, _) = to_point(&d)?;
                if ok {
                    agree += 1;
                } else {
                    report.witness(json!({"sample": i, "sizes": sizes(&d)}));
                }
            }
            report.set("seed", self.seed);
            report.set("samples", n);
            report.set("agreements", agree);
            report.require(agree == n);
            return Ok(report);
        }
        let d = self.r.diagram(ARGS, diagram.ok_or_else(|| usage("give --diagram or --random"))?)?;
        match along {
            None => {
                let (ok, apex) = to_point(&d)?;
                report.set("apex", apex);
                report.set(if dir == KanDirection::Left { "agrees_with_colimit" } else { "agrees_with_limit" }, ok);
                report.require(ok);
            }
            Some(k) => {
                let k = self.r.functor(ARGS, k)?;
                let ext = kan_extension(dir, &k, &d, &self.bounds).map_err(core)?;
                let target = k.target();
                report.set(
                    "extension",
                    target
                        .objects()
                        .map(|b| (target.name(b).to_string(), ext.extension.elements(b).to_vec()))
                        .collect::<BTreeMap<_, _>>(),
                );
                let cert = verify_kan(&k, &d, &ext, max_size, &self.bounds).map_err(core)?;
                report.set("transformations_checked", cert.cones_checked);
                report.set("factorization_failures", cert.failures.len());
                report.require(cert.holds());
            }
        }
        Ok(report)
    }

    fn yoneda(&self, category: &str, max_size: usize) -> Result<Report, CliError> {
        let cat = self.r.category(ARGS, category)?;
        let all = Presheaf::enumerate(&cat, max_size, &self.bounds).map_err(core)?;
        let mut report = Report::new("yoneda");
        let (mut pairs, mut elements) = (0, 0);
        for a in cat.objects() {
            let h = yoneda_presheaf(&cat, a);
            for f in &all {
                pairs += 1;
                let n = count_naturals(&h, f, &self.bounds).map_err(core)?;
                let mut ok = n == f.size(a);
                for x in 0..f.size(a) {
                    elements += 1;
                    let eta = yoneda_from_element(f, a, x).map_err(core)?;
                    ok &= yoneda_to_element(f, a, &eta).map_err(core)? == x;
                }
                for eta in enumerate_naturals(&h, f, &self.bounds).map_err(core)? {
                    let x = yoneda_to_element(f, a, &eta).map_err(core)?;
                    ok &= yoneda_from_element(f, a, x).map_err(core)? == eta;
                }
                if !ok {
                    report.witness(json!({"object": cat.name(a), "presheaf": sizes(f), "naturals": n}));
                    report.require(false);
                }
            }
        }
        report.set("objects", cat.object_count());
        report.set("presheaves", all.len());
        report.set("pairs_checked", pairs);
        report.set("elements_round_tripped", elements);
        Ok(report)
    }

    fn load(&self, path: &std::path::Path) -> Result<Report, CliError> {
        let set = load::load(path, &self.bounds).map_err(CliError::Load)?;
        let mut report = Report::new("load");
        report.set("documents", set.len());
        report.set(
            "kinds",
            set.entries()
                .map(|e| (e.document.name().to_string(), e.document.kind()))
                .collect::<BTreeMap<_, _>>(),
        );
        Ok(report)
    }
}

impl CliError {
    fn is_intractable(&self) -> bool {
        matches!(self, CliError::Intractable(_))
    }
}

fn fmt_documents(path: &std::path::Path, write: bool) -> Result<Report, CliError> {
    let files = load::document_files(path).map_err(|e| CliError::Load(vec![e]))?;
    let mut report = Report::new("fmt");
    let mut checked = 0;
    for f in files {
        let origin = f.display().to_string();
        let text = std::fs::read_to_string(&f).map_err(|e| LoadError::Io {
            path: origin.clone(),
            message: e.to_string(),
        })?;
        let doc = load::parse_document(&text, &origin)?;
        let canonical = doc.to_canonical();
        checked += 1;
        if canonical != text {
            if write {
                std::fs::write(&f, canonical).map_err(|e| LoadError::Io {
                    path: origin.clone(),
                    message: e.to_string(),
                })?;
                report.witness(json!({"rewritten": origin}));
            } else {
                report.witness(json!({"not_canonical": origin}));
                report.require(false);
            }
        }
    }
    report.set("files", checked);
    Ok(report)
}

fn list(docs: &DocumentSet) -> Report {
    let mut report = Report::new("list");
    report.set(
        "documents",
        docs.entries()
            .map(|e| json!({"name": e.document.name(), "kind": e.document.kind(), "origin": e.origin}))
            .collect::<Vec<_>>(),
    );
    report
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
