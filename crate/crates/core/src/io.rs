//! JSON round-tripping and DOT/TikZ rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arrows::ArrowSet;
use crate::error::{Error, ModelError};
use crate::lattice::{Arrow, FiniteLattice, LatticeSpec};
use crate::localize::LocalizationGraph;
use crate::model::{bifibrant_objects, ModelStructure};
use crate::paths::phi;
use crate::transfer::{TransferSystem, WfsPoset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferJson {
    pub lattice: LatticeSpec,
    pub rel: Vec<Arrow>,
}

/// Identities are omitted on write and implied on read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub lattice: LatticeSpec,
    pub weq: Vec<Arrow>,
    pub cof: Vec<Arrow>,
    pub fib: Vec<Arrow>,
}

/// The three classes of a model JSON document, not yet checked against the axioms.
pub struct RawClasses {
    pub lattice: Arc<FiniteLattice>,
    pub w: ArrowSet,
    pub c: ArrowSet,
    pub f: ArrowSet,
}

fn non_identity(l: &FiniteLattice, s: &ArrowSet) -> Vec<Arrow> {
    l.members(s).filter(|a| !a.is_identity()).collect()
}

pub fn transfer_to_json(r: &TransferSystem) -> TransferJson {
    TransferJson {
        lattice: r.carrier().spec().clone(),
        rel: r.non_identity(),
    }
}

pub fn transfer_from_json(j: &TransferJson) -> Result<TransferSystem, Error> {
    let l = j.lattice.build()?.into_shared();
    let rel = l.reflexive_set(j.rel.iter().copied())?;
    Ok(TransferSystem::new(l, rel)?)
}

pub fn model_to_json(m: &ModelStructure) -> ModelJson {
    let l = m.carrier();
    ModelJson {
        lattice: l.spec().clone(),
        weq: non_identity(l, m.w()),
        cof: non_identity(l, m.c()),
        fib: non_identity(l, m.f()),
    }
}

impl ModelJson {
    pub fn classes(&self) -> Result<RawClasses, Error> {
        let lattice = self.lattice.build()?.into_shared();
        let w = lattice.reflexive_set(self.weq.iter().copied())?;
        let c = lattice.reflexive_set(self.cof.iter().copied())?;
        let f = lattice.reflexive_set(self.fib.iter().copied())?;
        Ok(RawClasses { lattice, w, c, f })
    }
}

/// Parses and verifies a model structure.
pub fn model_from_json(j: &ModelJson) -> Result<ModelStructure, Error> {
    let RawClasses { lattice, w, c, f } = j.classes()?;
    Ok(ModelStructure::new(lattice, w, c, f)?)
}

pub fn model_from_str(s: &str) -> Result<ModelStructure, Error> {
    model_from_json(&serde_json::from_str(s)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Tikz,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExportConfig {
    pub format: Format,
    /// Draw weak equivalences in orange.
    pub highlight_weq: bool,
    /// Label each drawn arrow with `c` and/or `f` for its classes.
    pub mark_classes: bool,
}

impl Default for ExportConfig {
    fn default() -> Self {
        Self {
            format: Format::Dot,
            highlight_weq: true,
            mark_classes: false,
        }
    }
}

/// Covering pairs `x < y` of the lattice, in arrow order.
pub fn covers(l: &FiniteLattice) -> Vec<Arrow> {
    l.arrows()
        .iter()
        .copied()
        .filter(|a| {
            !a.is_identity()
                && !(0..l.size()).any(|z| z != a.src && z != a.dst && l.leq(a.src, z) && l.leq(z, a.dst))
        })
        .collect()
}

fn rank(l: &FiniteLattice) -> Vec<usize> {
    let mut rank = vec![0; l.size()];
    let cov = covers(l);
    // arrows are sorted by source, which is not a linear extension in general
    for _ in 0..l.size() {
        for a in &cov {
            rank[a.dst] = rank[a.dst].max(rank[a.src] + 1);
        }
    }
    rank
}

fn class_marks(m: &ModelStructure, a: Arrow) -> String {
    let i = m.carrier().idx(a.src, a.dst);
    let mut s = String::new();
    if m.c().contains(i) {
        s.push('c');
    }
    if m.f().contains(i) {
        s.push('f');
    }
    s
}

pub fn model_dot(m: &ModelStructure, cfg: &ExportConfig) -> String {
    let l = m.carrier();
    let bif = bifibrant_objects(m);
    let mut out = String::from("digraph model {\n  rankdir=BT;\n  node [shape=circle, width=0.25, fixedsize=true, fontsize=10];\n");
    for x in 0..l.size() {
        if bif.contains(&x) {
            writeln!(out, "  {x} [width=0.45, color=blue, style=filled, fillcolor=lightblue];").unwrap();
        } else {
            writeln!(out, "  {x};").unwrap();
        }
    }
    for a in covers(l) {
        let mut attrs = Vec::new();
        if cfg.highlight_weq && m.is_weq(a.src, a.dst) {
            attrs.push("color=orange, penwidth=2".to_owned());
        }
        if cfg.mark_classes {
            attrs.push(format!("label=\"{}\"", class_marks(m, a)));
        }
        if attrs.is_empty() {
            writeln!(out, "  {} -> {};", a.src, a.dst).unwrap();
        } else {
            writeln!(out, "  {} -> {} [{}];", a.src, a.dst, attrs.join(", ")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn model_tikz(m: &ModelStructure, cfg: &ExportConfig) -> String {
    let l = m.carrier();
    let bif = bifibrant_objects(m);
    let rank = rank(l);
    let mut column: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = String::from("\\begin{tikzpicture}[>=stealth]\n");
    for x in 0..l.size() {
        let (px, py) = if l.as_chain().is_some() {
            (x, 0)
        } else {
            let c = column.entry(rank[x]).or_insert(0);
            *c += 1;
            (*c - 1, rank[x])
        };
        let style = if bif.contains(&x) {
            "circle, fill=blue!60, minimum size=7pt, inner sep=0pt"
        } else {
            "circle, fill=black, minimum size=3pt, inner sep=0pt"
        };
        writeln!(out, "  \\node[{style}, label=below:{{${x}$}}] (v{x}) at ({px},{py}) {{}};").unwrap();
    }
    for a in covers(l) {
        let color = if cfg.highlight_weq && m.is_weq(a.src, a.dst) {
            "orange, thick"
        } else {
            "black"
        };
        let label = if cfg.mark_classes {
            format!(" node[midway, above] {{\\scriptsize {}}}", class_marks(m, a))
        } else {
            String::new()
        };
        writeln!(out, "  \\draw[->, {color}] (v{}) --{label} (v{});", a.src, a.dst).unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

pub fn export_model(m: &ModelStructure, cfg: &ExportConfig) -> String {
    match cfg.format {
        Format::Dot => model_dot(m, cfg),
        Format::Tikz => model_tikz(m, cfg),
        Format::Json => {
            let mut s = serde_json::to_string(&model_to_json(m)).expect("serializable");
            s.push('\n');
            s
        }
    }
}

/// Non-identity arrows only.
pub fn transfer_dot(r: &TransferSystem) -> String {
    let l = r.carrier();
    let mut out = String::from("digraph transfer {\n  rankdir=BT;\n");
    for x in 0..l.size() {
        writeln!(out, "  {x};").unwrap();
    }
    for a in r.non_identity() {
        writeln!(out, "  {} -> {};", a.src, a.dst).unwrap();
    }
    out.push_str("}\n");
    out
}

fn node_label(m: &ModelStructure) -> Result<String, ModelError> {
    Ok(phi(m)?.to_string())
}

/// Localization edges between distinct nodes, labelled by the operators that
/// realise them; nodes are labelled by their monotone map. With `quillen`,
/// left Quillen identity functors are drawn dashed as well.
pub fn graph_dot(g: &LocalizationGraph, quillen: bool) -> Result<String, ModelError> {
    let mut out = String::from("digraph localizations {\n  node [shape=box, fontsize=10];\n");
    for (i, m) in g.nodes.iter().enumerate() {
        let extra = if i == g.trivial { ", style=bold" } else { "" };
        writeln!(out, "  m{i} [label=\"{}\"{extra}];", node_label(m)?).unwrap();
    }
    let mut labels: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for &(a, s, b) in &g.edges {
        if a != b {
            labels.entry((a, b)).or_default().push(s.to_string());
        }
    }
    for ((a, b), ls) in labels {
        writeln!(out, "  m{a} -> m{b} [label=\"{}\"];", ls.join(",")).unwrap();
    }
    if quillen {
        for &(a, b) in &g.quillen {
            writeln!(out, "  m{a} -> m{b} [style=dashed, color=gray];").unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Hasse diagram of the weak factorization systems, nodes labelled by their
/// right class.
pub fn wfs_hasse_dot(p: &WfsPoset) -> String {
    let mut out = String::from("digraph wfs {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n");
    for (i, r) in p.systems.iter().enumerate() {
        let arrows: Vec<String> = r.non_identity().iter().map(|a| a.to_string()).collect();
        writeln!(out, "  t{i} [label=\"{{{}}}\"];", arrows.join(" ")).unwrap();
    }
    for &(a, b) in &p.hasse {
        writeln!(out, "  t{a} -> t{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_models;
    use crate::transfer::wfs_poset;

    #[test]
    fn model_json_round_trip() {
        for n in 0..=3 {
            for m in enumerate_models(n) {
                let text = serde_json::to_string(&model_to_json(&m)).unwrap();
                assert_eq!(model_from_str(&text).unwrap(), m);
            }
        }
    }

    #[test]
    fn model_json_shape() {
        let m = ModelStructure::trivial(FiniteLattice::chain(1).into_shared());
        let text = serde_json::to_string(&model_to_json(&m)).unwrap();
        assert_eq!(
            text,
            r#"{"lattice":{"kind":"chain","n":1},"weq":[],"cof":[[0,1]],"fib":[[0,1]]}"#
        );
    }

    #[test]
    fn invalid_model_json_is_rejected() {
        let text = r#"{"lattice":{"kind":"chain","n":1},"weq":[],"cof":[],"fib":[]}"#;
        assert!(matches!(
            model_from_str(text),
            Err(Error::Model(ModelError::Invalid(_)))
        ));
        assert!(model_from_str("{").is_err());
    }

    #[test]
    fn transfer_json_round_trip() {
        let j: TransferJson =
            serde_json::from_str(r#"{"lattice":{"kind":"chain","n":2},"rel":[[0,1],[0,2]]}"#).unwrap();
        let r = transfer_from_json(&j).unwrap();
        assert_eq!(transfer_to_json(&r), j);
        let bad: TransferJson =
            serde_json::from_str(r#"{"lattice":{"kind":"chain","n":2},"rel":[[0,2]]}"#).unwrap();
        assert!(transfer_from_json(&bad).is_err());
        assert_eq!(transfer_dot(&r).matches("->").count(), 2);
    }

    #[test]
    fn dot_trivial_has_no_highlight() {
        let m = ModelStructure::trivial(FiniteLattice::chain(2).into_shared());
        let dot = model_dot(&m, &ExportConfig::default());
        assert!(!dot.contains("orange"));
        assert_eq!(dot.matches("fillcolor=lightblue").count(), 3);
        assert_eq!(dot, model_dot(&m, &ExportConfig::default()));
        let tikz = model_tikz(&m, &ExportConfig { mark_classes: true, ..Default::default() });
        assert_eq!(tikz.matches("\\draw").count(), 2);
    }

    #[test]
    fn covers_of_square() {
        let l = FiniteLattice::grid(1, 1);
        assert_eq!(covers(&l).len(), 4);
        assert_eq!(rank(&l), vec![0, 1, 1, 2]);
    }

    #[test]
    fn hasse_export() {
        let dot = wfs_hasse_dot(&wfs_poset(2));
        assert_eq!(dot.matches(" -> ").count(), 5);
    }
}
