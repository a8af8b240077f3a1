//! Quantumness inference.
//!
//! A class is quantum when it owns a quantum element, inherits from a quantum
//! superclass, or composes/aggregates a quantum part (directly, or through a
//! class-typed attribute). The classification is the least fixpoint of those
//! rules, computed by a breadth-first worklist from the classes that own a
//! quantum element. Declared markers are never read.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::*;

/// Why a class was classified quantum. Every variant except `OwnElement`
/// names the class the quantumness came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    OwnElement { member: MemberRef },
    Part { part: ClassId, relationship: RelId },
    AttributePart { part: ClassId, attribute: usize },
    Superclass { superclass: ClassId, relationship: RelId },
}

impl Reason {
    /// The class this step points back to.
    pub fn from_class(self) -> Option<ClassId> {
        match self {
            Reason::OwnElement { .. } => None,
            Reason::Part { part, .. } | Reason::AttributePart { part, .. } => Some(part),
            Reason::Superclass { superclass, .. } => Some(superclass),
        }
    }
}

/// Classification of every class, member and relationship of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumnessMap {
    classes: Vec<Nature>,
    reasons: Vec<Option<Reason>>,
    attributes: Vec<Vec<Nature>>,
    operations: Vec<Vec<Nature>>,
    relationships: Vec<Nature>,
}

impl QuantumnessMap {
    pub fn class_of(&self, class: ClassId) -> Nature {
        self.classes[class.0]
    }

    /// Member classification. A class-typed attribute takes the
    /// classification of the class it holds.
    pub fn element_of(&self, class: ClassId, member: MemberRef) -> Nature {
        match member {
            MemberRef::Attribute(i) => self.attributes[class.0][i],
            MemberRef::Operation(i) => self.operations[class.0][i],
        }
    }

    pub fn relationship_of(&self, rel: RelId) -> Nature {
        self.relationships[rel.0]
    }

    /// The immediate reason `class` is quantum, if it is.
    pub fn reason(&self, class: ClassId) -> Option<Reason> {
        self.reasons[class.0]
    }

    /// Rule chain from `class` back to a class owning a quantum element.
    /// Empty for classical classes.
    pub fn provenance(&self, class: ClassId) -> Vec<(ClassId, Reason)> {
        let mut chain = Vec::new();
        let mut cur = class;
        while let Some(reason) = self.reasons[cur.0] {
            chain.push((cur, reason));
            match reason.from_class() {
                Some(next) => cur = next,
                None => break,
            }
            // BFS parents form a tree, so this never exceeds the class count.
            debug_assert!(chain.len() <= self.classes.len());
        }
        chain
    }
}

/// Human-readable provenance, e.g.
/// `composition of QFT_n <- own quantum attribute state: qstate`.
pub fn describe_provenance(model: &Model, map: &QuantumnessMap, class: ClassId) -> String {
    let steps: Vec<String> = map
        .provenance(class)
        .into_iter()
        .map(|(at, reason)| describe_reason(model, at, reason))
        .collect();
    steps.join(" <- ")
}

pub fn describe_reason(model: &Model, at: ClassId, reason: Reason) -> String {
    let def = model.class(at);
    match reason {
        Reason::OwnElement { member: MemberRef::Attribute(i) } => {
            let a = &def.attributes[i];
            format!("own quantum attribute {}: {}", a.name, type_text(model, &a.dtype))
        }
        Reason::OwnElement { member: MemberRef::Operation(i) } => {
            let op = &def.operations[i];
            let why = if op.internal_quantum
                && operation_quantumness_interface(model, op) == Nature::Classical
            {
                "internally quantum operation"
            } else {
                "own quantum operation"
            };
            format!("{} {}", why, op.name)
        }
        Reason::Part { part, relationship } => format!(
            "{} of {}",
            model.relationships[relationship.0].kind.as_str(),
            model.class(part).name
        ),
        Reason::AttributePart { part, attribute } => format!(
            "attribute {} of class {}",
            def.attributes[attribute].name,
            model.class(part).name
        ),
        Reason::Superclass { superclass, .. } => {
            format!("inheritance from {}", model.class(superclass).name)
        }
    }
}

fn operation_quantumness_interface(model: &Model, op: &Operation) -> Nature {
    Nature::from_quantum(!has_classical_signature(model, op))
}

pub fn type_text(model: &Model, t: &TypeRef) -> String {
    match t.array_len {
        Some(n) => format!("{}[{}]", model.type_name(t), n),
        None => model.type_name(t).into(),
    }
}

/// Classification of a relationship under a given class classification.
///
/// Inheritance is quantum iff the superclass is; composition and aggregation
/// iff the part is. Associations are always classical.
pub fn classify_relationship(rel: &Relationship, map: &QuantumnessMap) -> Nature {
    match rel.kind {
        RelationshipKind::Inheritance
        | RelationshipKind::Composition
        | RelationshipKind::Aggregation => map.class_of(rel.target),
        RelationshipKind::Association => Nature::Classical,
    }
}

/// First member, in source order, that is intrinsically quantum.
fn own_quantum_element(model: &Model, class: ClassId) -> Option<MemberRef> {
    model
        .class(class)
        .member_order
        .iter()
        .copied()
        .find(|&m| element_quantumness(model, class, m).is_quantum())
}

/// Propagation edges: from each class to the classes its quantumness flows
/// into, with the reason recorded on the receiving side.
fn propagation_edges(model: &Model) -> Vec<Vec<(ClassId, Reason)>> {
    let mut out = vec![Vec::new(); model.classes.len()];
    for (i, r) in model.relationships.iter().enumerate() {
        let relationship = RelId(i);
        match r.kind {
            RelationshipKind::Composition | RelationshipKind::Aggregation => {
                out[r.target.0].push((r.source, Reason::Part { part: r.target, relationship }));
            }
            RelationshipKind::Inheritance => {
                out[r.target.0].push((
                    r.source,
                    Reason::Superclass { superclass: r.target, relationship },
                ));
            }
            RelationshipKind::Association => {}
        }
    }
    for owner in model.class_ids() {
        for (attribute, a) in model.class(owner).attributes.iter().enumerate() {
            if let TypeTarget::Class(part) = a.dtype.target {
                out[part.0].push((owner, Reason::AttributePart { part, attribute }));
            }
        }
    }
    out
}

/// Computes the [`QuantumnessMap`] of a resolved model.
pub fn infer(model: &Model) -> QuantumnessMap {
    least_fixpoint(model, model.class_ids())
}

/// Worklist evaluation with the seeds visited in `seed_order`. The class
/// classification does not depend on the order; provenance may.
fn least_fixpoint(model: &Model, seed_order: impl Iterator<Item = ClassId>) -> QuantumnessMap {
    let n = model.classes.len();
    let mut classes = vec![Nature::Classical; n];
    let mut reasons = vec![None; n];
    let mut queue = VecDeque::new();

    for c in seed_order {
        if let Some(member) = own_quantum_element(model, c) {
            if !classes[c.0].is_quantum() {
                classes[c.0] = Nature::Quantum;
                reasons[c.0] = Some(Reason::OwnElement { member });
                queue.push_back(c);
            }
        }
    }

    let edges = propagation_edges(model);
    while let Some(c) = queue.pop_front() {
        for &(next, reason) in &edges[c.0] {
            if !classes[next.0].is_quantum() {
                classes[next.0] = Nature::Quantum;
                reasons[next.0] = Some(reason);
                queue.push_back(next);
            }
        }
    }

    let attributes = model
        .class_ids()
        .map(|c| {
            model
                .class(c)
                .attributes
                .iter()
                .map(|a| match a.dtype.target {
                    TypeTarget::Data(id) => model.type_decl(id).nature,
                    TypeTarget::Class(part) => classes[part.0],
                })
                .collect()
        })
        .collect();
    let operations = model
        .classes
        .iter()
        .map(|def| def.operations.iter().map(|op| operation_quantumness(model, op)).collect())
        .collect();

    let mut map = QuantumnessMap {
        classes,
        reasons,
        attributes,
        operations,
        relationships: Vec::new(),
    };
    map.relationships = model
        .relationships
        .iter()
        .map(|r| classify_relationship(r, &map))
        .collect();
    map
}
