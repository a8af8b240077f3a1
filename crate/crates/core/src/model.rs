//! The resolved Q-UML model.
//!
//! A [`Model`] is produced by [`crate::resolve`]. All names are bound to
//! indices, so the types here never fail to look anything up. Values are
//! immutable after resolution.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::num::NonZeroU32;

use crate::span::Span;

/// Classical or quantum. Ordered so that `Classical < Quantum`, which makes
/// the join of two natures their maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nature {
    Classical,
    Quantum,
}

impl Nature {
    pub fn is_quantum(self) -> bool {
        self == Nature::Quantum
    }

    pub fn from_quantum(quantum: bool) -> Self {
        if quantum {
            Nature::Quantum
        } else {
            Nature::Classical
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Nature::Classical => "classical",
            Nature::Quantum => "quantum",
        }
    }
}

impl fmt::Display for Nature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationshipKind {
    Inheritance,
    Aggregation,
    Composition,
    Association,
}

impl RelationshipKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationshipKind::Inheritance => "inheritance",
            RelationshipKind::Aggregation => "aggregation",
            RelationshipKind::Composition => "composition",
            RelationshipKind::Association => "association",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MessageKind {
    Call,
    Return,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Visibility {
    #[default]
    Public,
    Private,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeOrigin {
    Builtin,
    User,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub usize);

/// Index of a relationship in [`Model::relationships`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelId(pub usize);

pub const BUILTIN_CLASSICAL: [&str; 6] = ["int", "uint", "float", "bool", "string", "void"];
pub const BUILTIN_QUANTUM: [&str; 3] = ["qubit", "qstate", "graphstate"];

/// Id of the built-in `void` type, used for omitted return types.
pub const VOID: TypeId = TypeId(5);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDecl {
    pub name: String,
    pub nature: Nature,
    pub origin: TypeOrigin,
    pub span: Option<Span>,
}

/// The built-in type registry, in id order.
pub fn builtin_types() -> Vec<TypeDecl> {
    let classical = BUILTIN_CLASSICAL.iter().map(|n| (n, Nature::Classical));
    let quantum = BUILTIN_QUANTUM.iter().map(|n| (n, Nature::Quantum));
    classical
        .chain(quantum)
        .map(|(name, nature)| TypeDecl {
            name: (*name).into(),
            nature,
            origin: TypeOrigin::Builtin,
            span: None,
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeTarget {
    Data(TypeId),
    Class(ClassId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeRef {
    pub target: TypeTarget,
    pub array_len: Option<NonZeroU32>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    pub dtype: TypeRef,
    pub declared_marker: Option<Nature>,
    pub visibility: Visibility,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub dtype: TypeRef,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    pub name: String,
    pub params: Vec<Param>,
    /// `void` when the source omits the return type.
    pub ret: TypeRef,
    pub ret_declared: bool,
    pub internal_quantum: bool,
    pub visibility: Visibility,
    pub span: Span,
}

/// Position of a member within its class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MemberRef {
    Attribute(usize),
    Operation(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDef {
    pub name: String,
    pub declared_marker: Option<Nature>,
    pub attributes: Vec<Attribute>,
    pub operations: Vec<Operation>,
    /// Members in source order.
    pub member_order: Vec<MemberRef>,
    pub name_span: Span,
    pub span: Span,
}

impl ClassDef {
    pub fn declared_quantum(&self) -> bool {
        self.declared_marker == Some(Nature::Quantum)
    }

    pub fn operation(&self, name: &str) -> Option<usize> {
        self.operations.iter().position(|o| o.name == name)
    }

    pub fn member_name(&self, m: MemberRef) -> &str {
        match m {
            MemberRef::Attribute(i) => &self.attributes[i].name,
            MemberRef::Operation(i) => &self.operations[i].name,
        }
    }

    pub fn member_span(&self, m: MemberRef) -> Span {
        match m {
            MemberRef::Attribute(i) => self.attributes[i].span,
            MemberRef::Operation(i) => self.operations[i].span,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relationship {
    pub kind: RelationshipKind,
    /// Subclass, whole, or associating class.
    pub source: ClassId,
    /// Superclass, part, or associated class.
    pub target: ClassId,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifeline {
    pub alias: String,
    pub class: ClassId,
    pub span: Span,
}

/// An operation located on a specific class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OpRef {
    pub class: ClassId,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    /// Index into the diagram's lifelines.
    pub from: usize,
    pub to: usize,
    pub kind: MessageKind,
    pub op_name: String,
    /// The public operation the message names, looked up on the receiver's
    /// class for calls and the sender's class for returns. `None` when no
    /// such operation exists.
    pub operation: Option<OpRef>,
    pub declared_marker: Nature,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceDiagram {
    pub name: String,
    pub lifelines: Vec<Lifeline>,
    pub messages: Vec<Message>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub name: String,
    pub types: Vec<TypeDecl>,
    pub classes: Vec<ClassDef>,
    pub relationships: Vec<Relationship>,
    pub sequences: Vec<SequenceDiagram>,
}

impl Model {
    pub fn class(&self, id: ClassId) -> &ClassDef {
        &self.classes[id.0]
    }

    pub fn type_decl(&self, id: TypeId) -> &TypeDecl {
        &self.types[id.0]
    }

    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        (0..self.classes.len()).map(ClassId)
    }

    pub fn class_named(&self, name: &str) -> Option<ClassId> {
        self.classes.iter().position(|c| c.name == name).map(ClassId)
    }

    pub fn sequence_named(&self, name: &str) -> Option<&SequenceDiagram> {
        self.sequences.iter().find(|s| s.name == name)
    }

    pub fn operation(&self, op: OpRef) -> &Operation {
        &self.class(op.class).operations[op.index]
    }

    /// Name of the type a reference points at.
    pub fn type_name(&self, t: &TypeRef) -> &str {
        match t.target {
            TypeTarget::Data(id) => &self.type_decl(id).name,
            TypeTarget::Class(id) => &self.class(id).name,
        }
    }

    /// Direct superclasses of `class`, in declaration order.
    pub fn superclasses(&self, class: ClassId) -> impl Iterator<Item = ClassId> + '_ {
        self.relationships
            .iter()
            .filter(move |r| r.kind == RelationshipKind::Inheritance && r.source == class)
            .map(|r| r.target)
    }

    /// Finds a public operation named `name` on `class` or, failing that, on
    /// its superclasses (breadth-first, declaration order).
    pub fn find_public_operation(&self, class: ClassId, name: &str) -> Option<OpRef> {
        let mut seen = alloc::vec![false; self.classes.len()];
        let mut queue = alloc::collections::VecDeque::from([class]);
        seen[class.0] = true;
        while let Some(c) = queue.pop_front() {
            let def = self.class(c);
            if let Some(index) = def
                .operations
                .iter()
                .position(|o| o.name == name && o.visibility == Visibility::Public)
            {
                return Some(OpRef { class: c, index });
            }
            for sup in self.superclasses(c) {
                if !seen[sup.0] {
                    seen[sup.0] = true;
                    queue.push_back(sup);
                }
            }
        }
        None
    }
}

/// Quantumness of a data-type reference. Class references yield `None`:
/// their quantumness is a matter for inference.
pub fn data_nature(model: &Model, t: &TypeRef) -> Option<Nature> {
    match t.target {
        TypeTarget::Data(id) => Some(model.type_decl(id).nature),
        TypeTarget::Class(_) => None,
    }
}

/// Intrinsic quantumness of a class member.
///
/// * An attribute is quantum iff its data type is quantum. A class-typed
///   attribute is classical here; it contributes through an implicit
///   composition edge instead.
/// * An operation is quantum iff a parameter is quantum, the return type is
///   quantum, or it is internally quantum.
///
/// Depends only on the member's signature and the type registry, never on
/// how the owning class is classified.
pub fn element_quantumness(model: &Model, class: ClassId, member: MemberRef) -> Nature {
    let def = model.class(class);
    match member {
        MemberRef::Attribute(i) => {
            data_nature(model, &def.attributes[i].dtype).unwrap_or(Nature::Classical)
        }
        MemberRef::Operation(i) => operation_quantumness(model, &def.operations[i]),
    }
}

pub fn operation_quantumness(model: &Model, op: &Operation) -> Nature {
    let interface = op
        .params
        .iter()
        .map(|p| &p.dtype)
        .chain(core::iter::once(&op.ret))
        .any(|t| data_nature(model, t) == Some(Nature::Quantum));
    Nature::from_quantum(interface || op.internal_quantum)
}

/// True when every parameter and the return type are classical data.
pub fn has_classical_signature(model: &Model, op: &Operation) -> bool {
    op.params
        .iter()
        .map(|p| &p.dtype)
        .chain(core::iter::once(&op.ret))
        .all(|t| data_nature(model, t) == Some(Nature::Classical))
}

/// Payload quantumness of a message: the parameters of the named operation
/// for a call, its return type for a return. `None` when the message names
/// no known operation.
pub fn message_payload(model: &Model, msg: &Message) -> Option<Nature> {
    let op = model.operation(msg.operation?);
    let quantum = match msg.kind {
        MessageKind::Call => op
            .params
            .iter()
            .any(|p| data_nature(model, &p.dtype) == Some(Nature::Quantum)),
        MessageKind::Return => data_nature(model, &op.ret) == Some(Nature::Quantum),
    };
    Some(Nature::from_quantum(quantum))
}
