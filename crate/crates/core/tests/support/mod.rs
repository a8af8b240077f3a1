//! Random Q-UML models for property tests, with an independent
//! reachability oracle for class quantumness.
//!
//! The generator keeps its own record of which members it made quantum, so
//! the oracle never consults the library under test.

#![allow(dead_code)]

use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::Rng;

pub const CLASSICAL_TYPES: [&str; 6] = ["int", "uint", "float", "bool", "string", "void"];
pub const QUANTUM_TYPES: [&str; 3] = ["qubit", "qstate", "graphstate"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelKind {
    Inherit,
    Compose,
    Aggregate,
    Assoc,
}

#[derive(Clone, Debug)]
pub enum GenType {
    Data { name: String, quantum: bool, len: Option<u32> },
    Class(usize),
}

impl GenType {
    fn is_quantum_data(&self) -> bool {
        matches!(self, GenType::Data { quantum: true, .. })
    }
}

#[derive(Clone, Debug)]
pub struct GenAttr {
    pub name: String,
    pub ty: GenType,
    pub private: bool,
    pub marked: bool,
}

#[derive(Clone, Debug)]
pub struct GenOp {
    pub name: String,
    pub params: Vec<(String, GenType)>,
    pub ret: Option<GenType>,
    pub internal: bool,
    pub private: bool,
}

#[derive(Clone, Debug)]
pub enum GenMember {
    Attr(GenAttr),
    Op(GenOp),
}

#[derive(Clone, Debug)]
pub struct GenClass {
    pub name: String,
    pub marked: bool,
    pub members: Vec<GenMember>,
}

#[derive(Clone, Debug)]
pub struct GenMessage {
    pub quantum: bool,
    pub from: usize,
    pub to: usize,
    pub ret: bool,
    pub op: String,
}

#[derive(Clone, Debug)]
pub struct GenSequence {
    pub name: String,
    /// (alias, class index)
    pub lifelines: Vec<(String, usize)>,
    pub messages: Vec<GenMessage>,
}

#[derive(Clone, Debug)]
pub struct GenModel {
    pub name: String,
    /// User types: (name, quantum).
    pub types: Vec<(String, bool)>,
    pub classes: Vec<GenClass>,
    /// (kind, source, target). Inheritance always has source > target, so
    /// inheritance is acyclic.
    pub rels: Vec<(RelKind, usize, usize)>,
    pub sequences: Vec<GenSequence>,
}

pub struct GenConfig {
    pub max_classes: usize,
    pub max_members: usize,
    pub quantum_prob: f64,
    pub internal_prob: f64,
    pub max_rels: usize,
    pub class_attr_prob: f64,
    pub with_sequences: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_classes: 12,
            max_members: 4,
            quantum_prob: 0.08,
            internal_prob: 0.05,
            max_rels: 14,
            class_attr_prob: 0.08,
            with_sequences: true,
        }
    }
}

fn data_type<R: Rng>(rng: &mut R, cfg: &GenConfig, user: &[(String, bool)]) -> GenType {
    let quantum = rng.gen_bool(cfg.quantum_prob);
    let mut pool: Vec<&str> = if quantum {
        QUANTUM_TYPES.to_vec()
    } else {
        CLASSICAL_TYPES.to_vec()
    };
    pool.extend(user.iter().filter(|(_, q)| *q == quantum).map(|(n, _)| n.as_str()));
    let name = pool.choose(rng).unwrap().to_string();
    let len = if rng.gen_bool(0.15) { Some(rng.gen_range(1..=64)) } else { None };
    GenType::Data { name, quantum, len }
}

impl GenModel {
    pub fn random<R: Rng>(rng: &mut R, cfg: &GenConfig) -> GenModel {
        let mut types = Vec::new();
        for i in 0..rng.gen_range(0..=2) {
            types.push((format!("t{}", i), rng.gen_bool(0.5)));
        }
        let n = rng.gen_range(1..=cfg.max_classes);
        let mut classes = Vec::with_capacity(n);
        for c in 0..n {
            let mut members = Vec::new();
            for m in 0..rng.gen_range(0..=cfg.max_members) {
                if rng.gen_bool(0.5) {
                    let ty = if n > 1 && rng.gen_bool(cfg.class_attr_prob) {
                        let mut other = rng.gen_range(0..n);
                        if other == c {
                            other = (other + 1) % n;
                        }
                        GenType::Class(other)
                    } else {
                        data_type(rng, cfg, &types)
                    };
                    let marked = ty.is_quantum_data() && rng.gen_bool(0.7);
                    members.push(GenMember::Attr(GenAttr {
                        name: format!("a{}", m),
                        ty,
                        private: rng.gen_bool(0.3),
                        marked,
                    }));
                } else {
                    let params = (0..rng.gen_range(0..=2))
                        .map(|p| (format!("p{}", p), data_type(rng, cfg, &types)))
                        .collect();
                    let ret = rng.gen_bool(0.6).then(|| data_type(rng, cfg, &types));
                    members.push(GenMember::Op(GenOp {
                        name: format!("o{}", m),
                        params,
                        ret,
                        internal: rng.gen_bool(cfg.internal_prob),
                        private: rng.gen_bool(0.2),
                    }));
                }
            }
            classes.push(GenClass {
                name: format!("C{}", c),
                marked: rng.gen_bool(0.3),
                members,
            });
        }
        let mut model = GenModel {
            name: "random".into(),
            types,
            classes,
            rels: Vec::new(),
            sequences: Vec::new(),
        };
        for _ in 0..rng.gen_range(0..=cfg.max_rels) {
            model.add_random_rel(rng);
        }
        if cfg.with_sequences {
            for s in 0..rng.gen_range(0..=2) {
                model.add_random_sequence(rng, format!("s{}", s));
            }
        }
        model
    }

    pub fn add_random_rel<R: Rng>(&mut self, rng: &mut R) {
        let n = self.classes.len();
        let kind = *[RelKind::Inherit, RelKind::Compose, RelKind::Aggregate, RelKind::Assoc]
            .choose(rng)
            .unwrap();
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if kind == RelKind::Inherit {
            if a == b {
                return;
            }
            self.rels.push((kind, a.max(b), a.min(b)));
        } else {
            self.rels.push((kind, a, b));
        }
    }

    fn add_random_sequence<R: Rng>(&mut self, rng: &mut R, name: String) {
        let n = self.classes.len();
        let lifelines: Vec<(String, usize)> = (0..rng.gen_range(1..=4))
            .map(|i| (format!("l{}", i), rng.gen_range(0..n)))
            .collect();
        let mut messages = Vec::new();
        for _ in 0..rng.gen_range(0..=5) {
            let from = rng.gen_range(0..lifelines.len());
            let to = rng.gen_range(0..lifelines.len());
            let ret = rng.gen_bool(0.3);
            let owner = if ret { lifelines[from].1 } else { lifelines[to].1 };
            let ops: Vec<&str> = self.classes[owner]
                .members
                .iter()
                .filter_map(|m| match m {
                    GenMember::Op(o) => Some(o.name.as_str()),
                    _ => None,
                })
                .collect();
            let op = match ops.choose(rng) {
                Some(op) if rng.gen_bool(0.85) => op.to_string(),
                _ => "missing".to_string(),
            };
            messages.push(GenMessage {
                quantum: rng.gen_bool(0.3),
                from,
                to,
                ret,
                op,
            });
        }
        self.sequences.push(GenSequence { name, lifelines, messages });
    }

    /// Adds one random class, member, or relationship.
    pub fn augment<R: Rng>(&mut self, rng: &mut R, cfg: &GenConfig) {
        match rng.gen_range(0..3) {
            0 => {
                let idx = self.classes.len();
                let extra = GenModel::random(rng, &GenConfig { max_classes: 1, with_sequences: false, ..*cfg });
                let mut class = extra.classes.into_iter().next().unwrap();
                class.name = format!("C{}", idx);
                // The fresh class may only refer to itself's predecessors.
                for m in &mut class.members {
                    if let GenMember::Attr(GenAttr { ty: ty @ GenType::Class(_), .. }) = m {
                        *ty = GenType::Class(rng.gen_range(0..idx));
                    }
                    strip_user_types(m);
                }
                self.classes.push(class);
            }
            1 => {
                let c = rng.gen_range(0..self.classes.len());
                let fresh = self.classes[c].members.len() + 100;
                let ty = data_type(rng, cfg, &self.types);
                let member = if rng.gen_bool(0.5) {
                    GenMember::Attr(GenAttr {
                        name: format!("a{}", fresh),
                        marked: false,
                        ty,
                        private: rng.gen_bool(0.3),
                    })
                } else {
                    GenMember::Op(GenOp {
                        name: format!("o{}", fresh),
                        params: vec![("p0".into(), ty)],
                        ret: None,
                        internal: rng.gen_bool(cfg.internal_prob * 4.0),
                        private: false,
                    })
                };
                self.classes[c].members.push(member);
            }
            _ => self.add_random_rel(rng),
        }
    }

    /// Does class `c` own an intrinsically quantum member?
    pub fn owns_quantum_element(&self, c: usize) -> bool {
        self.classes[c].members.iter().any(|m| match m {
            GenMember::Attr(a) => a.ty.is_quantum_data(),
            GenMember::Op(o) => {
                o.internal
                    || o.params.iter().any(|(_, t)| t.is_quantum_data())
                    || o.ret.as_ref().is_some_and(GenType::is_quantum_data)
            }
        })
    }

    /// Brute-force oracle: class quantumness as reachability in the
    /// propagation digraph from the classes owning a quantum element,
    /// using a Floyd-Warshall transitive closure.
    pub fn oracle_quantum_classes(&self) -> Vec<bool> {
        let n = self.classes.len();
        let mut reach = vec![vec![false; n]; n];
        for &(kind, source, target) in &self.rels {
            if kind != RelKind::Assoc {
                reach[target][source] = true;
            }
        }
        for (owner, class) in self.classes.iter().enumerate() {
            for m in &class.members {
                if let GenMember::Attr(GenAttr { ty: GenType::Class(part), .. }) = m {
                    reach[*part][owner] = true;
                }
            }
        }
        #[allow(clippy::needless_range_loop)]
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        (0..n)
            .map(|c| {
                self.owns_quantum_element(c)
                    || (0..n).any(|s| self.owns_quantum_element(s) && reach[s][c])
            })
            .collect()
    }

    /// Removes every intrinsically quantum member.
    pub fn without_quantum_elements(&self) -> GenModel {
        let mut m = self.clone();
        for c in &mut m.classes {
            c.members.retain(|mem| match mem {
                GenMember::Attr(a) => !a.ty.is_quantum_data(),
                GenMember::Op(o) => {
                    !(o.internal
                        || o.params.iter().any(|(_, t)| t.is_quantum_data())
                        || o.ret.as_ref().is_some_and(GenType::is_quantum_data))
                }
            });
        }
        m
    }

    /// Flips every class-level marker.
    pub fn with_flipped_markers(&self) -> GenModel {
        let mut m = self.clone();
        for c in &mut m.classes {
            c.marked = !c.marked;
        }
        m
    }

    /// Consistent renaming of every identifier.
    pub fn alpha_renamed(&self) -> GenModel {
        let r = |s: &str| format!("zz_{}_{}", s.chars().rev().collect::<String>(), s.len());
        let mut m = self.clone();
        m.name = r(&m.name);
        let renamed_types: Vec<(String, String)> = m.types.iter().map(|(n, _)| (n.clone(), r(n))).collect();
        for (n, _) in &mut m.types {
            *n = r(n);
        }
        let fix_ty = |t: &mut GenType| {
            if let GenType::Data { name, .. } = t {
                if let Some((_, new)) = renamed_types.iter().find(|(old, _)| old == name) {
                    *name = new.clone();
                }
            }
        };
        for c in &mut m.classes {
            c.name = r(&c.name);
            for mem in &mut c.members {
                match mem {
                    GenMember::Attr(a) => {
                        a.name = r(&a.name);
                        fix_ty(&mut a.ty);
                    }
                    GenMember::Op(o) => {
                        o.name = r(&o.name);
                        for (pn, pt) in &mut o.params {
                            *pn = r(pn);
                            fix_ty(pt);
                        }
                        if let Some(t) = &mut o.ret {
                            fix_ty(t);
                        }
                    }
                }
            }
        }
        for s in &mut m.sequences {
            s.name = r(&s.name);
            for (alias, _) in &mut s.lifelines {
                *alias = r(alias);
            }
            for msg in &mut s.messages {
                msg.op = r(&msg.op);
            }
        }
        m
    }

    fn type_text(&self, t: &GenType) -> String {
        match t {
            GenType::Data { name, len: Some(n), .. } => format!("{}[{}]", name, n),
            GenType::Data { name, len: None, .. } => name.clone(),
            GenType::Class(c) => self.classes[*c].name.clone(),
        }
    }

    /// Top-level declarations as separate source chunks, in model order.
    pub fn source_items(&self) -> Vec<String> {
        let mut items = Vec::new();
        for (name, quantum) in &self.types {
            items.push(format!("{} type {}", if *quantum { "quantum" } else { "classical" }, name));
        }
        for c in &self.classes {
            let mut s = String::new();
            if c.marked {
                s.push_str("quantum ");
            }
            let _ = writeln!(s, "class {} {{", c.name);
            for m in &c.members {
                match m {
                    GenMember::Attr(a) => {
                        let _ = writeln!(
                            s,
                            "  {}{}attr {}: {}",
                            if a.marked { "quantum " } else { "" },
                            if a.private { "private " } else { "" },
                            a.name,
                            self.type_text(&a.ty)
                        );
                    }
                    GenMember::Op(o) => {
                        let params: Vec<String> = o
                            .params
                            .iter()
                            .map(|(n, t)| format!("{}: {}", n, self.type_text(t)))
                            .collect();
                        let ret = o
                            .ret
                            .as_ref()
                            .map(|t| format!(" -> {}", self.type_text(t)))
                            .unwrap_or_default();
                        let _ = writeln!(
                            s,
                            "  {}{}op {}({}){}",
                            if o.internal { "quantum " } else { "" },
                            if o.private { "private " } else { "" },
                            o.name,
                            params.join(", "),
                            ret
                        );
                    }
                }
            }
            s.push('}');
            items.push(s);
        }
        for &(kind, a, b) in &self.rels {
            let (a, b) = (&self.classes[a].name, &self.classes[b].name);
            items.push(match kind {
                RelKind::Inherit => format!("inherit {} from {}", a, b),
                RelKind::Compose => format!("compose {} has {}", a, b),
                RelKind::Aggregate => format!("aggregate {} has {}", a, b),
                RelKind::Assoc => format!("assoc {} with {}", a, b),
            });
        }
        for seq in &self.sequences {
            let mut s = format!("sequence {} {{\n", seq.name);
            for (alias, c) in &seq.lifelines {
                let _ = writeln!(s, "  lifeline {}: {}", alias, self.classes[*c].name);
            }
            for m in &seq.messages {
                let _ = writeln!(
                    s,
                    "  {} {} {} {} : {}",
                    if m.quantum { "qmsg" } else { "msg" },
                    seq.lifelines[m.from].0,
                    if m.ret { "-->" } else { "->" },
                    seq.lifelines[m.to].0,
                    m.op
                );
            }
            s.push('}');
            items.push(s);
        }
        items
    }

    pub fn source(&self) -> String {
        self.source_with_items(self.source_items())
    }

    pub fn source_with_items(&self, items: Vec<String>) -> String {
        let mut s = format!("model {}\n", self.name);
        for item in items {
            s.push_str(&item);
            s.push('\n');
        }
        s
    }
}

fn strip_user_types(m: &mut GenMember) {
    // User types are shared by name with the donor model, which may not
    // declare the same ones; fall back to built-ins.
    let fix = |t: &mut GenType| {
        if let GenType::Data { name, quantum, .. } = t {
            if name.starts_with('t') {
                *name = if *quantum { "qubit".into() } else { "int".into() };
            }
        }
    };
    match m {
        GenMember::Attr(a) => fix(&mut a.ty),
        GenMember::Op(o) => {
            o.params.iter_mut().for_each(|(_, t)| fix(t));
            if let Some(t) = &mut o.ret {
                fix(t);
            }
        }
    }
}

/// Readers for the renderers' output, written against the emitted text
/// rather than the renderer's internals.
pub mod inspect {
    use regex::Regex;

    #[derive(Debug)]
    pub struct DotNode {
        pub name: String,
        pub bold: bool,
        /// (line text without markup, bold)
        pub members: Vec<(String, bool)>,
    }

    #[derive(Debug)]
    pub struct DotEdge {
        pub source: String,
        pub target: String,
        pub double: bool,
        pub kind: String,
    }

    fn unbold(s: &str) -> (String, bool) {
        match s.strip_prefix("<b>").and_then(|s| s.strip_suffix("</b>")) {
            Some(inner) => (inner.to_string(), true),
            None => (s.to_string(), false),
        }
    }

    pub fn dot_nodes(dot: &str) -> Vec<DotNode> {
        let node = Regex::new(r#"(?s)  "([^"]+)" \[label=<\n(.*?)</table>>\];"#).unwrap();
        let row = Regex::new(r"<tr><td[^>]*>(.*?)</td></tr>").unwrap();
        node.captures_iter(dot)
            .map(|cap| {
                let rows: Vec<&str> = row
                    .captures_iter(&cap[2])
                    .map(|r| r.get(1).unwrap().as_str())
                    .collect();
                let (title, bold) = unbold(rows[0]);
                assert_eq!(title, &cap[1]);
                let members = rows[1..]
                    .iter()
                    .flat_map(|r| r.split("<br align=\"left\"/>"))
                    .filter(|l| !l.trim().is_empty())
                    .map(unbold)
                    .collect();
                DotNode { name: cap[1].to_string(), bold, members }
            })
            .collect()
    }

    pub fn dot_edges(dot: &str) -> Vec<DotEdge> {
        let edge = Regex::new(r#"  "([^"]+)" -> "([^"]+)" \[.*color="([^"]+)", class="(\w+)"\];"#).unwrap();
        edge.captures_iter(dot)
            .map(|c| DotEdge {
                source: c[1].to_string(),
                target: c[2].to_string(),
                double: match &c[3] {
                    "black:invis:black" => true,
                    "black" => false,
                    other => panic!("unexpected edge colour {}", other),
                },
                kind: c[4].to_string(),
            })
            .collect()
    }

    #[derive(Debug)]
    pub struct SvgMessage {
        pub class: String,
        pub strokes: usize,
        pub dashed: bool,
        pub label: String,
    }

    /// Parses the SVG (panicking if it is not well-formed XML) and returns
    /// lifeline headers as (text, bold) and message groups.
    pub fn svg(svg: &str) -> (Vec<(String, bool)>, Vec<SvgMessage>) {
        let doc = roxmltree::Document::parse(svg).expect("SVG is well-formed XML");
        let mut headers = Vec::new();
        let mut messages = Vec::new();
        for g in doc.descendants().filter(|n| n.has_tag_name("g")) {
            let class = g.attribute("class").unwrap_or_default();
            if class.starts_with("lifeline") {
                let text = g.children().find(|n| n.has_tag_name("text")).unwrap();
                headers.push((
                    text.text().unwrap_or_default().to_string(),
                    text.attribute("font-weight") == Some("bold"),
                ));
            } else if class.starts_with("message") {
                let strokes: Vec<_> = g
                    .children()
                    .filter(|n| n.has_tag_name("line") || n.has_tag_name("polyline"))
                    .collect();
                let dashed = strokes.iter().all(|s| s.attribute("stroke-dasharray").is_some());
                let label = g
                    .children()
                    .find(|n| n.has_tag_name("text"))
                    .and_then(|t| t.text())
                    .unwrap_or_default()
                    .to_string();
                messages.push(SvgMessage {
                    class: class.to_string(),
                    strokes: strokes.len(),
                    dashed,
                    label,
                });
            }
        }
        (headers, messages)
    }
}

/// Checks that the rendered class diagram and every sequence diagram style
/// exactly the quantum things bold / double. Returns a description of the
/// first violation.
pub fn check_render_style(analysis: &quml_core::Analysis) -> Result<(), String> {
    use quml_core::model::{message_payload, MemberRef, RelId};
    let m = &analysis.model;
    let q = &analysis.quantumness;
    let dot = quml_core::render_class_diagram(m, q).content;
    let nodes = inspect::dot_nodes(&dot);
    if nodes.len() != m.classes.len() {
        return Err(format!("{} nodes for {} classes", nodes.len(), m.classes.len()));
    }
    for (c, node) in m.class_ids().zip(&nodes) {
        let def = m.class(c);
        if node.name != def.name || node.bold != q.class_of(c).is_quantum() {
            return Err(format!("class {} bold={} but {:?}", def.name, node.bold, q.class_of(c)));
        }
        let expected: Vec<bool> = (0..def.attributes.len())
            .map(MemberRef::Attribute)
            .chain((0..def.operations.len()).map(MemberRef::Operation))
            .map(|mr| q.element_of(c, mr).is_quantum())
            .collect();
        let actual: Vec<bool> = node.members.iter().map(|(_, b)| *b).collect();
        if expected != actual {
            return Err(format!("members of {}: bold {:?}, expected {:?}", def.name, actual, expected));
        }
    }
    let edges = inspect::dot_edges(&dot);
    if edges.len() != m.relationships.len() {
        return Err(format!("{} edges for {} relationships", edges.len(), m.relationships.len()));
    }
    for (i, (r, e)) in m.relationships.iter().zip(&edges).enumerate() {
        if e.source != m.class(r.source).name
            || e.target != m.class(r.target).name
            || e.kind != r.kind.as_str()
            || e.double != q.relationship_of(RelId(i)).is_quantum()
        {
            return Err(format!("edge {:?} does not match relationship {}", e, i));
        }
    }
    if bold_count(&dot) != nodes.iter().map(|n| n.bold as usize + n.members.iter().filter(|x| x.1).count()).sum::<usize>() {
        return Err("stray bold markup in DOT".into());
    }

    for seq in &m.sequences {
        let svg = quml_core::render_sequence_diagram(m, q, &seq.name).unwrap().content;
        let (headers, messages) = inspect::svg(&svg);
        if headers.len() != seq.lifelines.len() || messages.len() != seq.messages.len() {
            return Err(format!("sequence {}: wrong element count", seq.name));
        }
        for (l, (text, bold)) in seq.lifelines.iter().zip(&headers) {
            if *bold != q.class_of(l.class).is_quantum()
                || *text != format!("{}: {}", l.alias, m.class(l.class).name)
            {
                return Err(format!("lifeline {} header {:?} bold={}", l.alias, text, bold));
            }
        }
        for (msg, drawn) in seq.messages.iter().zip(&messages) {
            let quantum = message_payload(m, msg).unwrap_or(msg.declared_marker).is_quantum();
            let want = if quantum { 2 } else { 1 };
            let is_return = msg.kind == quml_core::model::MessageKind::Return;
            if drawn.strokes != want || drawn.dashed != is_return || drawn.label != msg.op_name {
                return Err(format!("message {} drawn as {:?}", msg.op_name, drawn));
            }
        }
    }
    Ok(())
}

fn bold_count(s: &str) -> usize {
    s.matches("<b>").count()
}
