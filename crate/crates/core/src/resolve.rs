//! Name resolution: [`ParsedModel`] → [`Model`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::num::NonZeroU32;

use crate::diagnostic::{sort_diagnostics, Code, Diagnostic};
use crate::model::*;
use crate::span::Span;
use crate::syntax::ast::{self, Ident, Item, MemberSyntax, ParsedModel};

#[derive(Clone, Copy)]
enum Name {
    Type(TypeId),
    Class(ClassId),
}

struct Resolver {
    names: BTreeMap<String, Name>,
    diags: Vec<Diagnostic>,
}

/// Binds every name in the syntax tree. Fails with the full list of
/// diagnostics if any name is unresolved (E010), duplicated (E011), a class
/// appears in an operation signature (E012), an attribute's `quantum` marker
/// contradicts its data type (E022), or inheritance is cyclic (E050).
pub fn resolve(ast: &ParsedModel) -> Result<Model, Vec<Diagnostic>> {
    let mut r = Resolver {
        names: BTreeMap::new(),
        diags: Vec::new(),
    };

    let mut types = builtin_types();
    for (i, t) in types.iter().enumerate() {
        r.names.insert(t.name.clone(), Name::Type(TypeId(i)));
    }

    let mut declared_at: BTreeMap<String, Span> = BTreeMap::new();
    for item in &ast.items {
        if let Item::Type(t) = item {
            if r.declare(&t.name, &declared_at, Name::Type(TypeId(types.len()))) {
                declared_at.insert(t.name.name.clone(), t.name.span);
                types.push(TypeDecl {
                    name: t.name.name.clone(),
                    nature: t.nature,
                    origin: TypeOrigin::User,
                    span: Some(t.span),
                });
            }
        }
    }

    let class_syntax: Vec<&ast::ClassSyntax> = ast
        .items
        .iter()
        .filter_map(|i| match i {
            Item::Class(c) => Some(c),
            _ => None,
        })
        .collect();
    let mut accepted = Vec::new();
    for c in &class_syntax {
        let id = ClassId(accepted.len());
        if r.declare(&c.name, &declared_at, Name::Class(id)) {
            declared_at.insert(c.name.name.clone(), c.name.span);
            accepted.push(*c);
        }
    }

    let mut model = Model {
        name: ast.name.name.clone(),
        types,
        classes: Vec::new(),
        relationships: Vec::new(),
        sequences: Vec::new(),
    };

    for c in &accepted {
        let class = r.class(&model, c);
        model.classes.push(class);
    }

    for item in &ast.items {
        if let Item::Relationship(rel) = item {
            let source = r.class_name(&rel.source);
            let target = r.class_name(&rel.target);
            if let (Some(source), Some(target)) = (source, target) {
                if rel.kind == RelationshipKind::Inheritance && source == target {
                    r.diags.push(Diagnostic::new(
                        Code::E050,
                        rel.span,
                        format!("class `{}` inherits from itself", rel.source.name),
                    ));
                    continue;
                }
                model.relationships.push(Relationship {
                    kind: rel.kind,
                    source,
                    target,
                    span: rel.span,
                });
            }
        }
    }
    r.inheritance_cycles(&model);

    let mut seq_names: BTreeMap<&str, Span> = BTreeMap::new();
    for item in &ast.items {
        if let Item::Sequence(s) = item {
            if let Some(prev) = seq_names.get(s.name.name.as_str()) {
                r.diags.push(duplicate(&s.name, "sequence", *prev));
                continue;
            }
            seq_names.insert(&s.name.name, s.name.span);
            let seq = r.sequence(&model, s);
            model.sequences.push(seq);
        }
    }

    if r.diags.iter().any(Diagnostic::is_error) {
        sort_diagnostics(&mut r.diags);
        Err(r.diags)
    } else {
        Ok(model)
    }
}

fn duplicate(name: &Ident, what: &str, prev: Span) -> Diagnostic {
    Diagnostic::new(
        Code::E011,
        name.span,
        format!("duplicate {} `{}`", what, name.name),
    )
    .with_related(prev, "first declared here")
}

impl Resolver {
    /// Registers a top-level name. Returns false (after reporting E011) when
    /// the name is already taken.
    fn declare(&mut self, name: &Ident, declared_at: &BTreeMap<String, Span>, value: Name) -> bool {
        match self.names.get(&name.name) {
            None => {
                self.names.insert(name.name.clone(), value);
                true
            }
            Some(_) => {
                let diag = match declared_at.get(&name.name) {
                    Some(prev) => duplicate(name, "declaration", *prev),
                    None => Diagnostic::new(
                        Code::E011,
                        name.span,
                        format!("`{}` shadows a built-in type", name.name),
                    ),
                };
                self.diags.push(diag);
                false
            }
        }
    }

    fn class_name(&mut self, name: &Ident) -> Option<ClassId> {
        match self.names.get(&name.name) {
            Some(Name::Class(id)) => Some(*id),
            Some(Name::Type(_)) => {
                self.diags.push(Diagnostic::new(
                    Code::E010,
                    name.span,
                    format!("`{}` is a data type, not a class", name.name),
                ));
                None
            }
            None => {
                self.diags.push(Diagnostic::new(
                    Code::E010,
                    name.span,
                    format!("unknown class `{}`", name.name),
                ));
                None
            }
        }
    }

    fn type_ref(&mut self, t: &ast::TypeRefSyntax, allow_class: bool) -> TypeRef {
        let target = match self.names.get(&t.name.name) {
            Some(Name::Type(id)) => TypeTarget::Data(*id),
            Some(Name::Class(id)) if allow_class => TypeTarget::Class(*id),
            Some(Name::Class(_)) => {
                self.diags.push(Diagnostic::new(
                    Code::E012,
                    t.name.span,
                    format!(
                        "class `{}` cannot be used as a parameter or return type",
                        t.name.name
                    ),
                ));
                TypeTarget::Data(VOID)
            }
            None => {
                self.diags.push(Diagnostic::new(
                    Code::E010,
                    t.name.span,
                    format!("unknown type `{}`", t.name.name),
                ));
                TypeTarget::Data(VOID)
            }
        };
        TypeRef {
            target,
            array_len: t.array_len.and_then(NonZeroU32::new),
            span: t.span,
        }
    }

    fn class(&mut self, model: &Model, c: &ast::ClassSyntax) -> ClassDef {
        let mut def = ClassDef {
            name: c.name.name.clone(),
            declared_marker: c.quantum.then_some(Nature::Quantum),
            attributes: Vec::new(),
            operations: Vec::new(),
            member_order: Vec::new(),
            name_span: c.name.span,
            span: c.span,
        };
        let mut seen: BTreeMap<&str, Span> = BTreeMap::new();
        for m in &c.members {
            let name = m.name();
            if let Some(prev) = seen.get(name.name.as_str()) {
                self.diags.push(duplicate(name, "member", *prev));
                continue;
            }
            seen.insert(&name.name, name.span);
            match m {
                MemberSyntax::Attr(a) => {
                    let dtype = self.type_ref(&a.ty, true);
                    if a.quantum {
                        if let TypeTarget::Data(id) = dtype.target {
                            let decl = model.type_decl(id);
                            // Unresolved types already produced E010.
                            let resolved = self.names.contains_key(&a.ty.name.name);
                            if resolved && decl.nature == Nature::Classical {
                                self.diags.push(
                                    Diagnostic::new(
                                        Code::E022,
                                        a.span,
                                        format!(
                                            "attribute `{}` is marked quantum but its type `{}` is classical",
                                            a.name.name, decl.name
                                        ),
                                    )
                                    .with_related(a.ty.span, "classical type"),
                                );
                            }
                        }
                    }
                    def.member_order.push(MemberRef::Attribute(def.attributes.len()));
                    def.attributes.push(Attribute {
                        name: a.name.name.clone(),
                        dtype,
                        declared_marker: a.quantum.then_some(Nature::Quantum),
                        visibility: visibility(a.private),
                        span: a.span,
                    });
                }
                MemberSyntax::Op(o) => {
                    let mut params = Vec::new();
                    let mut param_names: BTreeMap<&str, Span> = BTreeMap::new();
                    for p in &o.params {
                        if let Some(prev) = param_names.get(p.name.name.as_str()) {
                            self.diags.push(duplicate(&p.name, "parameter", *prev));
                        }
                        param_names.insert(&p.name.name, p.name.span);
                        params.push(Param {
                            name: p.name.name.clone(),
                            dtype: self.type_ref(&p.ty, false),
                            span: p.span,
                        });
                    }
                    let ret = match &o.ret {
                        Some(t) => self.type_ref(t, false),
                        None => TypeRef {
                            target: TypeTarget::Data(VOID),
                            array_len: None,
                            span: o.name.span,
                        },
                    };
                    def.member_order.push(MemberRef::Operation(def.operations.len()));
                    def.operations.push(Operation {
                        name: o.name.name.clone(),
                        params,
                        ret,
                        ret_declared: o.ret.is_some(),
                        internal_quantum: o.quantum,
                        visibility: visibility(o.private),
                        span: o.span,
                    });
                }
            }
        }
        def
    }

    /// Reports one E050 per strongly connected component of the inheritance
    /// graph that contains a cycle.
    fn inheritance_cycles(&mut self, model: &Model) {
        let n = model.classes.len();
        let mut adj = alloc::vec![Vec::new(); n];
        for r in &model.relationships {
            if r.kind == RelationshipKind::Inheritance {
                adj[r.source.0].push(r.target.0);
            }
        }
        for comp in strongly_connected(&adj) {
            if comp.len() < 2 {
                continue;
            }
            let mut in_comp = alloc::vec![false; n];
            comp.iter().for_each(|&c| in_comp[c] = true);
            let mut edges = model.relationships.iter().filter(|r| {
                r.kind == RelationshipKind::Inheritance && in_comp[r.source.0] && in_comp[r.target.0]
            });
            let Some(first) = edges.next() else { continue };
            let mut names: Vec<&str> = comp.iter().map(|&c| model.classes[c].name.as_str()).collect();
            names.sort_unstable();
            let mut diag = Diagnostic::new(
                Code::E050,
                first.span,
                format!("inheritance cycle through {}", names.join(", ")),
            );
            for r in edges {
                diag = diag.with_related(r.span, "part of the cycle");
            }
            self.diags.push(diag);
        }
    }

    fn sequence(&mut self, model: &Model, s: &ast::SequenceSyntax) -> SequenceDiagram {
        let mut lifelines: Vec<Lifeline> = Vec::new();
        // Aliases that failed to resolve are remembered so that messages
        // using them do not produce a second error.
        let mut broken: Vec<&str> = Vec::new();
        for l in &s.lifelines {
            if let Some(prev) = lifelines.iter().find(|x| x.alias == l.alias.name) {
                self.diags.push(duplicate(&l.alias, "lifeline", prev.span));
                continue;
            }
            match self.class_name(&l.class) {
                Some(class) => lifelines.push(Lifeline {
                    alias: l.alias.name.clone(),
                    class,
                    span: l.span,
                }),
                None => broken.push(&l.alias.name),
            }
        }
        let mut messages = Vec::new();
        for m in &s.messages {
            let endpoint = |alias: &Ident, diags: &mut Vec<Diagnostic>| {
                let found = lifelines.iter().position(|l| l.alias == alias.name);
                if found.is_none() && !broken.contains(&alias.name.as_str()) {
                    diags.push(Diagnostic::new(
                        Code::E010,
                        alias.span,
                        format!("unknown lifeline `{}`", alias.name),
                    ));
                }
                found
            };
            let from = endpoint(&m.from, &mut self.diags);
            let to = endpoint(&m.to, &mut self.diags);
            let (Some(from), Some(to)) = (from, to) else { continue };
            let owner = match m.kind {
                MessageKind::Call => lifelines[to].class,
                MessageKind::Return => lifelines[from].class,
            };
            messages.push(Message {
                from,
                to,
                kind: m.kind,
                op_name: m.op.name.clone(),
                operation: model.find_public_operation(owner, &m.op.name),
                declared_marker: Nature::from_quantum(m.quantum),
                span: m.span,
            });
        }
        SequenceDiagram {
            name: s.name.name.clone(),
            lifelines,
            messages,
            span: s.span,
        }
    }
}

fn visibility(private: bool) -> Visibility {
    if private {
        Visibility::Private
    } else {
        Visibility::Public
    }
}

/// Tarjan's algorithm, iterative. Components come out in reverse
/// topological order; node order within a component is unspecified.
fn strongly_connected(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = alloc::vec![UNSEEN; n];
    let mut low = alloc::vec![0; n];
    let mut on_stack = alloc::vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut work = alloc::vec![(root, 0usize)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut edge)) = work.last_mut() {
            if let Some(&w) = adj[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}
